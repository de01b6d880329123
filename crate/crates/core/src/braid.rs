//! Braid words, their text format, and combinatorics of the closure.
//!
//! The canonical text form is `"<strands>: g1 g2 ..."` where letter `+i`
//! is the generator crossing strands `i` and `i+1` positively and `-i` its
//! inverse. The empty word on `m` strands closes to an `m`-component unlink.

use std::fmt;

use crate::{Error, Result};

/// A braid word: strand count plus signed generator letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

/// Writhe, closure permutation, and component count of a braid closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidProps {
    pub writhe: i64,
    /// `permutation[i]` is the bottom position reached by the strand that
    /// starts at top position `i`.
    pub permutation: Vec<usize>,
    /// Number of cycles of the closure permutation.
    pub components: usize,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Syntax("strand count must be at least 1".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::LetterRange(format!(
                    "letter {g} invalid on {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, word })
    }

    /// Parse the canonical `"<strands>: g1 g2 ..."` text form.
    pub fn parse(text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| Error::Syntax("expected \"<strands>: letters\"".into()))?;
        let strands: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("bad strand count {:?}", head.trim())))?;
        let mut word = Vec::new();
        for tok in tail.split_whitespace() {
            let g: i32 = tok
                .parse()
                .map_err(|_| Error::Syntax(format!("bad letter {tok:?}")))?;
            word.push(g);
        }
        BraidWord::new(strands, word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn props(&self) -> BraidProps {
        let writhe = self.word.iter().map(|&g| g.signum() as i64).sum();
        let mut permutation: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            permutation.swap(i, i + 1);
        }
        // permutation currently maps bottom position -> top position of the
        // strand passing through; invert to get top -> bottom.
        let mut top_to_bottom = vec![0; self.strands];
        for (bottom, &top) in permutation.iter().enumerate() {
            top_to_bottom[top] = bottom;
        }
        let components = count_cycles(&top_to_bottom);
        BraidProps {
            writhe,
            permutation: top_to_bottom,
            components,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.props().writhe
    }

    pub fn components(&self) -> usize {
        self.props().components
    }

    /// True when the closure is a knot.
    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// The braid with every crossing sign flipped; its closure is the mirror
    /// image of this closure.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().map(|&g| -g).collect(),
        }
    }

    /// Side-by-side connected sum: `other` is appended with all letters
    /// shifted so its first strand is this braid's last strand. Both
    /// closures must be knots.
    pub fn connected_sum(&self, other: &BraidWord) -> Result<BraidWord> {
        for b in [self, other] {
            let components = b.components();
            if components != 1 {
                return Err(Error::NotAKnot(components));
            }
        }
        let shift = (self.strands - 1) as i32;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&g| g + g.signum() * shift));
        BraidWord::new(self.strands + other.strands - 1, word)
    }
}

/// The standard torus braid `(sigma_1 ... sigma_{m-1})^{|p|}` in `B_m`, all
/// letters carrying the sign of `p`. Its closure is the `(m, p)` torus link,
/// with `gcd(m, |p|)` components.
pub fn torus_braid(m: usize, p: i64) -> Result<BraidWord> {
    if m < 2 {
        return Err(Error::OutOfRange("torus braid needs m >= 2".into()));
    }
    if p == 0 {
        return Err(Error::OutOfRange("torus braid needs p != 0".into()));
    }
    let sign = p.signum() as i32;
    let mut word = Vec::with_capacity((m - 1) * p.unsigned_abs() as usize);
    for _ in 0..p.unsigned_abs() {
        for i in 1..m {
            word.push(sign * i as i32);
        }
    }
    BraidWord::new(m, word)
}

fn count_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for g in &self.word {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}
