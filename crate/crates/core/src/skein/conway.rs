use super::{first_ascending, oriented_pairs, smooth, switch_at};
use super::{SkeinConfig, SkeinError, SkeinMemo};
use crate::diagram::Diagram;
use crate::poly::LaurentPoly;

/// `z^k` in the quarter-exponent encoding used for Conway polynomials.
fn z_pow(k: i64) -> LaurentPoly {
    LaurentPoly::t_quarters(4 * k)
}

fn conway_rec(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> LaurentPoly {
    let s = d.simplify();
    let key = s.canonical_key();
    if let Some(v) = memo.get_conway(&key) {
        return v;
    }
    let v = match first_ascending(&s) {
        None if s.component_count() == 1 => LaurentPoly::one(),
        None => LaurentPoly::zero(),
        Some(i) => {
            let c = s.crossings()[i];
            let d0 = smooth(&s, i, oriented_pairs(&c), true);
            let rest = conway_rec(&switch_at(&s, i), memo, cfg);
            let skein = &conway_rec(&d0, memo, cfg) * &z_pow(1);
            if c.sign > 0 {
                rest + skein
            } else {
                rest - skein
            }
        }
    };
    memo.put_conway(key, v.clone(), cfg.memo_entries);
    v
}

/// Conway polynomial `∇(z)`. `z^k` is stored as the whole power `k`, so
/// `display_as("z", 1, 1)` prints it in `z`.
pub fn conway_with(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<LaurentPoly, SkeinError> {
    let n = d.crossing_count();
    if n > cfg.max_crossings {
        return Err(SkeinError::ResourceLimit {
            crossings: n,
            cap: cfg.max_crossings,
        });
    }
    Ok(conway_rec(d, memo, cfg))
}

/// [`conway_with`] using a private memo and default limits.
pub fn conway(d: &Diagram) -> Result<LaurentPoly, SkeinError> {
    conway_with(d, &SkeinMemo::new(), &SkeinConfig::default())
}

/// `Δ(t) = ∇(t^{1/2} - t^{-1/2})`, already symmetric.
pub fn alexander_from_conway(nabla: &LaurentPoly) -> LaurentPoly {
    let z = LaurentPoly::t_quarters(2) - LaurentPoly::t_quarters(-2);
    let mut out = LaurentPoly::zero();
    for (q, c) in nabla.terms() {
        let k = q / 4;
        out = out + z.pow(k as u32).scale(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::pd_parse;
    use crate::diagram::tests::{FIGURE8, HOPF, TREFOIL};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn z(s: &str) -> LaurentPoly {
        LaurentPoly::parse_as(s, 'z', 1, 1).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(conway(&Diagram::unknot()).unwrap(), LaurentPoly::one());
        assert_eq!(conway(&Diagram::unlink(2)).unwrap(), LaurentPoly::zero());
        let t = pd_parse(TREFOIL).unwrap();
        let n = conway(&t).unwrap();
        assert_eq!(n, z("1 + z^2"));
        assert_eq!(n.display_as("z", 1, 1), "1 + z^2");
        assert_eq!(alexander_from_conway(&n), p("t^-1 - 1 + t"));
        let f8 = conway(&pd_parse(FIGURE8).unwrap()).unwrap();
        assert_eq!(alexander_from_conway(&f8), p("-t^-1 + 3 - t"));
        let h = conway(&pd_parse(HOPF).unwrap()).unwrap();
        assert!(h == z("z") || h == z("-z"), "{h}");
        assert_eq!(alexander_from_conway(&LaurentPoly::one()), LaurentPoly::one());
    }
}
