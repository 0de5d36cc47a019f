use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the nine entries of the 3×3 generator matrix, indexed row-major:
///
/// ```text
/// k p l
/// q r s
/// m t n
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

pub const NAMES: [char; 9] = ['k', 'p', 'l', 'q', 'r', 's', 'm', 't', 'n'];

/// Word order used for normal words: r < k < l < m < n < p < q < s < t.
const RANK: [u8; 9] = [1, 5, 2, 6, 0, 7, 3, 8, 4];

impl Generator {
    pub const K: Generator = Generator(0);
    pub const P: Generator = Generator(1);
    pub const L: Generator = Generator(2);
    pub const Q: Generator = Generator(3);
    pub const R: Generator = Generator(4);
    pub const S: Generator = Generator(5);
    pub const M: Generator = Generator(6);
    pub const T: Generator = Generator(7);
    pub const N: Generator = Generator(8);

    pub fn all() -> impl Iterator<Item = Generator> {
        (0..9).map(Generator)
    }

    pub fn from_index(i: usize) -> Option<Generator> {
        (i < 9).then_some(Generator(i as u8))
    }

    /// Entry `T[i][j]`, zero-based.
    pub fn at(i: usize, j: usize) -> Generator {
        Generator((3 * i + j) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> char {
        NAMES[self.index()]
    }

    pub fn from_char(c: char) -> Result<Generator> {
        NAMES
            .iter()
            .position(|&n| n == c.to_ascii_lowercase())
            .map(|i| Generator(i as u8))
            .ok_or_else(|| Error::Generator(c.to_string()))
    }

    pub fn rank(self) -> u8 {
        RANK[self.index()]
    }

    pub fn by_rank() -> [Generator; 9] {
        let mut g: Vec<Generator> = Generator::all().collect();
        g.sort_by_key(|x| x.rank());
        g.try_into().expect("nine generators")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Generator::from_char(c),
            _ => Err(Error::Generator(s.to_string())),
        }
    }
}

/// `9a + b`, the coordinate of the ordered monomial `ab`.
pub fn monomial_index(a: Generator, b: Generator) -> usize {
    9 * a.index() + b.index()
}

pub fn monomial_of(index: usize) -> (Generator, Generator) {
    (Generator((index / 9) as u8), Generator((index % 9) as u8))
}

/// Which generator set coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    Original,
    Tilde,
    Hat,
}

impl BasisLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisLabel::Original => "original",
            BasisLabel::Tilde => "tilde",
            BasisLabel::Hat => "hat",
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(BasisLabel::Original),
            "tilde" => Ok(BasisLabel::Tilde),
            "hat" => Ok(BasisLabel::Hat),
            _ => Err(Error::parse(s, "basis must be original, tilde or hat")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_indices() {
        assert_eq!(monomial_index(Generator::K, Generator::K), 0);
        assert_eq!(monomial_index(Generator::N, Generator::N), 80);
        assert_eq!(monomial_index(Generator::K, Generator::N), 8);
        assert_eq!(monomial_index(Generator::N, Generator::K), 72);
        for i in 0..81 {
            let (a, b) = monomial_of(i);
            assert_eq!(monomial_index(a, b), i);
        }
    }

    #[test]
    fn slots_follow_matrix_layout() {
        let expect = "kplqrsmtn";
        for (i, c) in expect.chars().enumerate() {
            assert_eq!(Generator::at(i / 3, i % 3).name(), c);
        }
    }

    #[test]
    fn rank_order() {
        let s: String = Generator::by_rank().iter().map(|g| g.name()).collect();
        assert_eq!(s, "rklmnpqst");
    }

    #[test]
    fn parsing() {
        assert_eq!("K".parse::<Generator>().unwrap(), Generator::K);
        assert!("x".parse::<Generator>().is_err());
        assert!("kl".parse::<Generator>().is_err());
    }
}
