use std::fmt;
use std::str::FromStr;

use super::{PresentationError, Tangle};
use crate::diagram::Diagram;

/// A braid word. Letter `k > 0` is `σ_k`, `k < 0` is `σ_{|k|}^{-1}`.
///
/// With strands running downward, `σ_k` is the positive crossing in which the
/// strand at position `k+1` passes over the strand at position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, PresentationError> {
        if strands == 0 {
            return Err(PresentationError::IndexOutOfRange { index: 0, strands });
        }
        for &l in &letters {
            let k = l.unsigned_abs() as usize;
            if l == 0 || k >= strands {
                return Err(PresentationError::IndexOutOfRange { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> BraidWord {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`, read top to bottom.
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord, PresentationError> {
        if self.strands != other.strands {
            return Err(PresentationError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Where each top position ends up at the bottom.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            at.swap(k - 1, k);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    pub fn to_tangle(&self) -> Tangle {
        Tangle::from_braid(self)
    }

    /// Closure joining bottom position `i` to top position `i`.
    pub fn closure(&self) -> Diagram {
        self.to_tangle().closure()
    }
}

/// Parses `s1 s2^-1 ...`. The strand count is one more than the largest
/// index unless given.
pub fn braid_parse(text: &str, strands: Option<usize>) -> Result<BraidWord, PresentationError> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let at = text[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
        offset = at + tok.len();
        let bad = || PresentationError::Syntax {
            offset: at,
            message: format!("bad braid letter '{tok}'"),
        };
        let body = tok.strip_prefix('s').ok_or_else(bad)?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let k: i32 = idx.parse().map_err(|_| bad())?;
        let e: i32 = exp.parse().map_err(|_| bad())?;
        if k <= 0 {
            return Err(bad());
        }
        match e {
            1 => letters.push(k),
            -1 => letters.push(-k),
            _ => return Err(bad()),
        }
    }
    let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
    BraidWord::new(strands.unwrap_or(needed), letters)
}

impl FromStr for BraidWord {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        braid_parse(s, None)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("s{}^-1", -l)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
