use std::fmt;

use itertools::Itertools;

/// A boundary divisor of the six-point moduli space, by index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorLabel {
    AOnConic,
    BCollinearWith6([usize; 2]),
    CCollinearAmong5([usize; 3]),
    DCollision([usize; 2]),
}

impl DivisorLabel {
    pub fn class(&self) -> char {
        match self {
            DivisorLabel::AOnConic => 'A',
            DivisorLabel::BCollinearWith6(_) => 'B',
            DivisorLabel::CCollinearAmong5(_) => 'C',
            DivisorLabel::DCollision(_) => 'D',
        }
    }

    /// Image under a permutation of `1..=5` (`sigma[l - 1]` is the image of
    /// `l`); label 6 is fixed.
    pub fn act(&self, sigma: &[usize; 5]) -> DivisorLabel {
        let m = |l: usize| if l == 6 { 6 } else { sigma[l - 1] };
        let sort2 = |[a, b]: [usize; 2]| if a < b { [a, b] } else { [b, a] };
        match self {
            DivisorLabel::AOnConic => DivisorLabel::AOnConic,
            DivisorLabel::BCollinearWith6(p) => DivisorLabel::BCollinearWith6(sort2(p.map(m))),
            DivisorLabel::CCollinearAmong5(t) => {
                let mut t = t.map(m);
                t.sort_unstable();
                DivisorLabel::CCollinearAmong5(t)
            }
            DivisorLabel::DCollision(p) => DivisorLabel::DCollision(sort2(p.map(m))),
        }
    }
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorLabel::AOnConic => write!(f, "A"),
            DivisorLabel::BCollinearWith6([i, j]) => write!(f, "B{{{i},{j}}}"),
            DivisorLabel::CCollinearAmong5([i, j, k]) => write!(f, "C{{{i},{j},{k}}}"),
            DivisorLabel::DCollision([i, j]) => write!(f, "D{{{i},{j}}}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub labels: Vec<DivisorLabel>,
    /// Orbits of the label permutations, as indices into `labels`.
    pub orbits: Vec<Vec<usize>>,
}

impl Census {
    pub fn class_counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for l in &self.labels {
            c[(l.class() as u8 - b'A') as usize] += 1;
        }
        c
    }
}

/// Every divisor label with its orbits under permutations of `1..=5`.
pub fn boundary_divisors() -> Census {
    let mut labels = vec![DivisorLabel::AOnConic];
    labels.extend((1..=5).tuple_combinations().map(|(i, j)| DivisorLabel::BCollinearWith6([i, j])));
    labels.extend((1..=5).tuple_combinations().map(|(i, j, k)| DivisorLabel::CCollinearAmong5([i, j, k])));
    labels.extend((1..=6).tuple_combinations().map(|(i, j)| DivisorLabel::DCollision([i, j])));

    let perms: Vec<[usize; 5]> =
        (1..=5).permutations(5).map(|p| p.try_into().expect("five labels")).collect();
    let mut orbit_of = vec![usize::MAX; labels.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..labels.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = Vec::new();
        for sigma in &perms {
            let image = labels[start].act(sigma);
            let k = labels.iter().position(|l| *l == image).expect("labels are closed under the action");
            if orbit_of[k] == usize::MAX {
                orbit_of[k] = id;
                members.push(k);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Census { labels, orbits }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_counts() {
        let c = boundary_divisors();
        assert_eq!(c.labels.len(), 36);
        assert_eq!(c.class_counts(), [1, 10, 10, 15]);
        let sizes: Vec<(char, usize)> = c.orbits.iter().map(|o| (c.labels[o[0]].class(), o.len())).collect();
        assert_eq!(sizes, vec![('A', 1), ('B', 10), ('C', 10), ('D', 10), ('D', 5)]);
        let d5 = &c.orbits[4];
        assert!(d5.iter().all(|&k| matches!(c.labels[k], DivisorLabel::DCollision([_, 6]))));
    }
}
