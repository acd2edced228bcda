use super::{first_ascending, oriented_pairs, smooth, switch_at, unoriented_pairs};
use super::{SkeinConfig, SkeinError, SkeinMemo};
use crate::diagram::Diagram;
use crate::poly::TwoVarPoly;

/// `(a + a^{-1}) z^{-1} - 1`, the value of an extra split circle.
fn circle() -> TwoVarPoly {
    TwoVarPoly::monomial(1, 1, -1) + TwoVarPoly::monomial(1, -1, -1) - TwoVarPoly::one()
}

fn a_pow(k: i64) -> TwoVarPoly {
    TwoVarPoly::monomial(1, k, 0)
}

fn lambda_rec(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> TwoVarPoly {
    let s = d.simplify();
    let factor = a_pow(d.writhe() - s.writhe());
    let key = s.canonical_key();
    if let Some(v) = memo.get_lambda(&key) {
        return &v * &factor;
    }
    let v = match first_ascending(&s) {
        // a layered unlink, each component carrying its own curls
        None => &a_pow(s.writhe()) * &circle().pow(s.component_count().saturating_sub(1) as u32),
        Some(i) => {
            let c = s.crossings()[i];
            let d0 = smooth(&s, i, oriented_pairs(&c), false);
            let dinf = smooth(&s, i, unoriented_pairs(&c), false);
            let sw = switch_at(&s, i);
            let smoothed = lambda_rec(&d0, memo, cfg) + lambda_rec(&dinf, memo, cfg);
            &smoothed * &TwoVarPoly::z() - lambda_rec(&sw, memo, cfg)
        }
    };
    memo.put_lambda(key, v.clone(), cfg.memo_entries);
    &v * &factor
}

fn check(d: &Diagram, cfg: &SkeinConfig) -> Result<(), SkeinError> {
    let n = d.crossing_count();
    if n > cfg.max_crossings {
        return Err(SkeinError::ResourceLimit {
            crossings: n,
            cap: cfg.max_crossings,
        });
    }
    Ok(())
}

/// The regular-isotopy invariant `Λ`: `Λ(L+) + Λ(L-) = z(Λ(L0) + Λ(L∞))`,
/// a positive curl multiplies by `a`, `Λ(O) = 1`.
pub fn kauffman_lambda(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<TwoVarPoly, SkeinError> {
    check(d, cfg)?;
    Ok(lambda_rec(d, memo, cfg))
}

/// `F = a^{-w} Λ`.
pub fn kauffman_f_with(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<TwoVarPoly, SkeinError> {
    Ok(&kauffman_lambda(d, memo, cfg)? * &a_pow(-d.writhe()))
}

/// [`kauffman_f_with`] using a private memo and default limits.
pub fn kauffman_f(d: &Diagram) -> Result<TwoVarPoly, SkeinError> {
    kauffman_f_with(d, &SkeinMemo::new(), &SkeinConfig::default())
}
