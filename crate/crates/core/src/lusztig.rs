//! Lusztig data and their piecewise-linear transport along braid moves.
//!
//! A Lusztig datum `n` on a reduced word `i` of the longest element names the
//! MV polytope whose vertex chain is
//! `mu_{w_k} = mu_{w_{k-1}} - n_k w_{k-1}(alpha_{i_k}^vee)`.
//! Braid moves of order 2 swap two entries; order 3 moves act by the
//! tropicalization of the rational substitution
//! `(b1, b2, b3) -> (b2 b3 / (b1 + b3), b1 + b3, b1 b2 / (b1 + b3))`
//! obtained by reading valuations: products add, generic sums take the
//! minimum. Higher-order moves only occur in non-simply-laced types and are
//! handled by unfolding (see [`crate::folding`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::root_datum::{Coweight, RootDatum};
use crate::weyl::{BraidMove, ReducedWord, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    word: ReducedWord,
    values: Vec<u64>,
}

impl LusztigDatum {
    pub fn new(word: ReducedWord, values: Vec<u64>) -> Result<Self> {
        if word.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: word.len(),
                found: values.len(),
            });
        }
        Ok(Self { word, values })
    }

    pub fn zero(word: ReducedWord) -> Self {
        let values = vec![0; word.len()];
        Self { word, values }
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// The vertices `mu_{w_0}, ..., mu_{w_m}` along the datum's own word,
    /// starting from `mu_e = 0`.
    pub fn vertex_chain(&self, datum: &RootDatum) -> Vec<Coweight> {
        let betas = self.word.inversion_coroots(datum);
        let mut chain = Vec::with_capacity(self.values.len() + 1);
        let mut mu = datum.zero();
        chain.push(mu.clone());
        for (beta, &n) in betas.iter().zip(&self.values) {
            mu -= &beta.scaled(n as i64);
            chain.push(mu.clone());
        }
        chain
    }

    /// `mu_{w_0}`, the (stable) coweight of the polytope.
    pub fn coweight(&self, datum: &RootDatum) -> Coweight {
        self.vertex_chain(datum).pop().expect("chain is never empty")
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (", self.word)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Rewrites a datum across a single braid move of order 2 or 3.
pub fn tropical_move(
    datum: &RootDatum,
    lusztig: &LusztigDatum,
    mv: &BraidMove,
) -> Result<LusztigDatum> {
    let (i, j) = mv.nodes;
    datum.check_node(i)?;
    datum.check_node(j)?;
    if mv.order != datum.braid_order(i, j) {
        return Err(Error::MoveMismatch(mv.to_string(), lusztig.word.to_string()));
    }
    let word = mv.apply(&lusztig.word)?;
    let mut values = lusztig.values.clone();
    let p = mv.position;
    match mv.order {
        2 => values.swap(p, p + 1),
        3 => {
            let (a, b, c) = (values[p], values[p + 1], values[p + 2]);
            let m = a.min(c);
            values[p] = b + c - m;
            values[p + 1] = m;
            values[p + 2] = a + b - m;
        }
        d => return Err(Error::FoldedMoveRequired(d)),
    }
    Ok(LusztigDatum { word, values })
}

/// Applies a sequence of moves.
pub fn apply_moves(
    datum: &RootDatum,
    lusztig: &LusztigDatum,
    moves: &[BraidMove],
) -> Result<LusztigDatum> {
    moves
        .iter()
        .try_fold(lusztig.clone(), |d, mv| tropical_move(datum, &d, mv))
}

/// The Lusztig transform from `lusztig.word()` to `target`, composed along a
/// shortest braid path.
pub fn transport(
    group: &WeylGroup,
    lusztig: &LusztigDatum,
    target: &ReducedWord,
) -> Result<LusztigDatum> {
    group.check_longest_word(lusztig.word())?;
    group.check_longest_word(target)?;
    let path = group.braid_path(lusztig.word(), target)?;
    apply_moves(group.datum(), lusztig, &path)
}

/// `mu_{w_0}` of the datum; `coweight_of(d) = -sum_k n_k beta_k`.
pub fn coweight_of(datum: &RootDatum, lusztig: &LusztigDatum) -> Coweight {
    lusztig.coweight(datum)
}
