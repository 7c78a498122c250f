use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldDescriptor, Scalar};
use crate::geom::{Conic, GeomError, Line, Point2};

/// A nonzero polynomial in `x, y, z`, keyed by exponent triple.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryForm {
    field: FieldDescriptor,
    terms: BTreeMap<[u32; 3], Scalar>,
}

impl TernaryForm {
    pub fn new(field: &FieldDescriptor, terms: impl IntoIterator<Item = ([u32; 3], Scalar)>) -> Result<Self, GeomError> {
        let mut map: BTreeMap<[u32; 3], Scalar> = BTreeMap::new();
        for (e, c) in terms {
            let c = c.embed(field)?;
            let entry = map.entry(e).or_insert_with(|| field.zero());
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(GeomError::ZeroForm);
        }
        Ok(TernaryForm { field: field.clone(), terms: map })
    }

    pub fn from_ints(field: &FieldDescriptor, terms: &[([u32; 3], i64)]) -> Result<Self, GeomError> {
        Self::new(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))))
    }

    pub fn from_line(l: &Line) -> Self {
        let c = l.coords();
        Self::new(l.field(), [([1, 0, 0], c[0].clone()), ([0, 1, 0], c[1].clone()), ([0, 0, 1], c[2].clone())])
            .expect("a line has a nonzero coordinate")
    }

    pub fn from_conic(q: &Conic) -> Self {
        const MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]];
        Self::new(q.field(), MONOMIALS.into_iter().zip(q.coefficients().iter().cloned())).expect("a conic is nonzero")
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 3], Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, e: [u32; 3]) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Highest total degree.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn evaluate(&self, p: &Point2) -> Result<Scalar, GeomError> {
        let field = self.field.join(p.field())?;
        let c: Vec<Scalar> = p.coords().iter().map(|s| s.embed(&field)).collect::<Result<_, _>>()?;
        let mut acc = field.zero();
        for (e, k) in &self.terms {
            let mut t = k.embed(&field)?;
            for (v, &n) in c.iter().zip(e) {
                t = &t * &v.pow(u64::from(n));
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// The conic with the same equation, if the form is a quadric.
    pub fn to_conic(&self) -> Option<Conic> {
        if self.terms.keys().any(|e| e.iter().sum::<u32>() != 2) {
            return None;
        }
        let c = |e| self.coefficient(e);
        Conic::from_coefficients([c([2, 0, 0]), c([0, 2, 0]), c([0, 0, 2]), c([1, 1, 0]), c([1, 0, 1]), c([0, 1, 1])]).ok()
    }

    /// Scaled so the coefficient of the largest monomial is 1.
    pub fn normalized(&self) -> TernaryForm {
        let lead = self.terms.values().next_back().expect("nonzero form").inv().expect("nonzero coefficient");
        TernaryForm { field: self.field.clone(), terms: self.terms.iter().map(|(e, c)| (*e, c * &lead)).collect() }
    }

    pub fn equal_up_to_scale(&self, other: &TernaryForm) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minus_one = -&self.field.one();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, &n)| n > 0)
                .map(|(v, &n)| if n == 1 { v.to_string() } else { format!("{v}^{n}") })
                .collect();
            let mono = vars.join("*");
            let negated = *c == minus_one && !mono.is_empty();
            match (k > 0, negated) {
                (true, true) => write!(f, " - ")?,
                (true, false) => write!(f, " + ")?,
                (false, true) => write!(f, "-")?,
                (false, false) => {}
            }
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() || negated {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryForm({self})")
    }
}

/// Substitutes `[yz, xz, xy]` and removes the largest monomial factor. A
/// monomial is returned undivided.
pub fn std_cremona_form_image(f: &TernaryForm) -> TernaryForm {
    let moved: Vec<([u32; 3], Scalar)> =
        f.terms.iter().map(|(&[a, b, c], k)| ([b + c, a + c, a + b], k.clone())).collect();
    if moved.len() == 1 {
        return TernaryForm::new(&f.field, moved).expect("nonzero monomial");
    }
    let lo: [u32; 3] = std::array::from_fn(|i| moved.iter().map(|(e, _)| e[i]).min().unwrap_or(0));
    let terms = moved.into_iter().map(|(e, k)| (std::array::from_fn(|i| e[i] - lo[i]), k));
    TernaryForm::new(&f.field, terms).expect("substitution keeps distinct monomials distinct")
}
