//! Permutations in one-line notation and the Klein 4-group of trivial
//! equivalences acting on them.
//!
//! Throughout the crate a permutation of `{1..N}` is written in one-line
//! notation: `1 8 3 4 7 6 5 2 9` maps position 2 to value 8. Cycle notation
//! is never parsed or printed.

use std::fmt;
use std::str::FromStr;

/// A permutation of `{1..N}` in one-line notation.
///
/// Immutable value type; `image()[j-1]` is the value at position `j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    Empty,
    NotAnInteger(String),
    OutOfRange { value: usize, size: usize },
    Duplicate { value: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::Empty => write!(f, "empty input"),
            PermError::NotAnInteger(tok) => write!(f, "not an integer: {:?}", tok),
            PermError::OutOfRange { value, size } => {
                write!(f, "value {} out of range 1..{}", value, size)
            }
            PermError::Duplicate { value } => write!(f, "duplicate value {}", value),
        }
    }
}

impl std::error::Error for PermError {}

impl Permutation {
    /// Builds a permutation from its one-line image, checking bijectivity.
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        if image.is_empty() {
            return Err(PermError::Empty);
        }
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v < 1 || v > n {
                return Err(PermError::OutOfRange { value: v, size: n });
            }
            if seen[v] {
                return Err(PermError::Duplicate { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Value at position `j` (1-based).
    pub fn apply(&self, j: usize) -> usize {
        self.image[j - 1]
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut inv = vec![0; n];
        for (j, &v) in self.image.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { image: inv }
    }

    /// Conjugation by the reversal `j ↦ N+1-j`.
    pub fn reversal_conjugate(&self) -> Self {
        let n = self.size();
        let image = (1..=n).map(|j| n + 1 - self.apply(n + 1 - j)).collect();
        Permutation { image }
    }

    /// Applies one of the four trivial equivalences.
    pub fn act(&self, g: TrivialAction) -> Self {
        match g {
            TrivialAction::Id => self.clone(),
            TrivialAction::Kappa => self.reversal_conjugate(),
            TrivialAction::Rho => self.inverse(),
            TrivialAction::KappaRho => self.inverse().reversal_conjugate(),
        }
    }

    /// Orbit, isotropy and canonical representative under the Klein 4-group.
    pub fn orbit_report(&self) -> OrbitReport {
        let mut orbit: Vec<Permutation> = Vec::with_capacity(4);
        let mut isotropy = Vec::new();
        for g in TrivialAction::ALL {
            let q = self.act(g);
            if q == *self {
                isotropy.push(g);
            }
            if !orbit.contains(&q) {
                orbit.push(q);
            }
        }
        orbit.sort();
        let canonical = orbit[0].clone();
        OrbitReport {
            canonical,
            orbit,
            isotropy,
        }
    }

    /// Lexicographic minimum of the trivial-equivalence orbit.
    pub fn canonical(&self) -> Permutation {
        TrivialAction::ALL
            .iter()
            .map(|&g| self.act(g))
            .min()
            .unwrap()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let mut image = Vec::new();
        for tok in s.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| PermError::NotAnInteger(tok.to_string()))?;
            image.push(v);
        }
        Permutation::from_image(image)
    }
}

/// Parses whitespace-separated one-line notation.
pub fn parse_one_line(text: &str) -> Result<Permutation, PermError> {
    text.parse()
}

/// The Klein 4-group of trivial equivalences: `kappa` conjugates by the
/// reversal, `rho` inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrivialAction {
    Id,
    Kappa,
    Rho,
    KappaRho,
}

impl TrivialAction {
    pub const ALL: [TrivialAction; 4] = [
        TrivialAction::Id,
        TrivialAction::Kappa,
        TrivialAction::Rho,
        TrivialAction::KappaRho,
    ];

    pub fn compose(self, other: TrivialAction) -> TrivialAction {
        use TrivialAction::*;
        match (self, other) {
            (Id, g) | (g, Id) => g,
            (Kappa, Kappa) | (Rho, Rho) | (KappaRho, KappaRho) => Id,
            (Kappa, Rho) | (Rho, Kappa) => KappaRho,
            (Kappa, KappaRho) | (KappaRho, Kappa) => Rho,
            (Rho, KappaRho) | (KappaRho, Rho) => Kappa,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TrivialAction::Id => "id",
            TrivialAction::Kappa => "kappa",
            TrivialAction::Rho => "rho",
            TrivialAction::KappaRho => "kappa_rho",
        }
    }
}

/// Result of [`Permutation::orbit_report`].
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub canonical: Permutation,
    pub orbit: Vec<Permutation>,
    pub isotropy: Vec<TrivialAction>,
}

impl OrbitReport {
    pub fn isotropy_labels(&self) -> Vec<&'static str> {
        self.isotropy.iter().map(|g| g.label()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_one_line_notation() {
        let q = p("1 8 3 4 7 6 5 2 9");
        assert_eq!(q.size(), 9);
        assert_eq!(q.apply(2), 8);
        assert_eq!(q.to_string(), "1 8 3 4 7 6 5 2 9");

        assert_eq!(p("1"), Permutation::identity(1));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert_eq!("1 2 2".parse::<Permutation>(), Err(PermError::Duplicate { value: 2 }));
        assert_eq!(
            "1 5 3".parse::<Permutation>(),
            Err(PermError::OutOfRange { value: 5, size: 3 })
        );
        assert_eq!("".parse::<Permutation>(), Err(PermError::Empty));
        assert!(matches!(
            "1 x 3".parse::<Permutation>(),
            Err(PermError::NotAnInteger(_))
        ));
    }

    #[test]
    fn kappa_fixes_chafee_infante() {
        let ci3 = p("1 6 3 4 5 2 7");
        assert_eq!(ci3.act(TrivialAction::Kappa), ci3);
    }

    #[test]
    fn rho_fixes_involution() {
        let q = p("1 8 3 4 7 6 5 2 9");
        assert_eq!(q.act(TrivialAction::Rho), q);
    }

    #[test]
    fn identity_fixed_by_all_actions() {
        let id = Permutation::identity(5);
        for g in TrivialAction::ALL {
            assert_eq!(id.act(g), id);
        }
    }

    #[test]
    fn orbit_of_symmetric_permutation_is_singleton() {
        let ci3 = p("1 6 3 4 5 2 7");
        let report = ci3.orbit_report();
        assert_eq!(report.orbit.len(), 1);
        assert_eq!(report.isotropy.len(), 4);
        assert_eq!(report.canonical, ci3);
    }

    #[test]
    fn orbit_of_involution_has_two_elements() {
        let q = p("1 8 3 4 7 6 5 2 9");
        let report = q.orbit_report();
        assert_eq!(report.orbit.len(), 2);
        assert_eq!(
            report.isotropy,
            vec![TrivialAction::Id, TrivialAction::Rho]
        );
        // not kappa-symmetric: 10 - sigma(7) = 5 != 3
        assert_ne!(q.act(TrivialAction::Kappa), q);
    }

    #[test]
    fn orbit_times_isotropy_is_four() {
        for s in ["1 6 3 4 5 2 7", "1 8 3 4 7 6 5 2 9", "1 2 3", "1 4 3 2 5"] {
            let r = p(s).orbit_report();
            assert_eq!(r.orbit.len() * r.isotropy.len(), 4);
        }
    }
}
