//! The Galois group of `2T_{2^k}` over `Q`, acting on `Q[θ_k]`.
//!
//! An automorphism is determined by where it sends `θ_k`; the images are the
//! zeros `2cos((2i+1)π / 2^(k+1))` of the level modulus. `σ_i` is labelled by
//! increasing angle of its image, which reproduces the σ_0..σ_3 table at k = 2.
//! Any other labelling permutes the Cayley table.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact_field::{check_level, FieldElement, Rational, DEFAULT_MAX_LEVEL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    level: u32,
    image: FieldElement,
}

/// `M_k(y) = C_{2^k}(y)` via `C_{2m} = C_m^2 - 2`.
fn modulus_at(level: u32, y: &FieldElement) -> FieldElement {
    let two = FieldElement::from_integer(2);
    (0..level).fold(y.clone(), |acc, _| &(&acc * &acc) - &two)
}

impl Automorphism {
    /// Fails unless `image` is exactly a zero of the level modulus.
    pub fn new(level: u32, image: FieldElement) -> Result<Self> {
        if image.level() != level {
            return Err(Error::LevelMismatch { left: level, right: image.level() });
        }
        if !modulus_at(level, &image).is_zero() {
            return Err(Error::InvalidArgument(format!("{image} is not a conjugate of θ_{level}")));
        }
        Ok(Automorphism { level, image })
    }

    pub fn identity(level: u32) -> Result<Self> {
        Automorphism::new(level, FieldElement::generator(level)?)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn image(&self) -> &FieldElement {
        &self.image
    }

    pub fn apply(&self, e: &FieldElement) -> Result<FieldElement> {
        if e.level() != self.level {
            return Err(Error::LevelMismatch { left: self.level, right: e.level() });
        }
        e.substitute(&self.image)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        let image = self.apply(&other.image)?;
        Ok(Automorphism { level: self.level, image })
    }
}

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    level: u32,
    elements: Vec<Automorphism>,
    cayley: Vec<Vec<usize>>,
}

pub fn galois_group(k: u32) -> Result<GaloisGroup> {
    if k == 0 {
        return Err(Error::InvalidArgument("the Galois group is defined for k >= 1".into()));
    }
    check_level(k, DEFAULT_MAX_LEVEL)?;
    let order = 1usize << k;
    let elements = (0..order)
        .map(|i| {
            let image = FieldElement::cos_term(k, 2 * i + 1, Rational::one())?;
            Automorphism::new(k, image)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cayley = vec![vec![0; order]; order];
    for (a, row) in cayley.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let c = elements[a].compose(&elements[b])?;
            *cell = elements
                .iter()
                .position(|e| e.image == c.image)
                .ok_or_else(|| Error::InvalidArgument("composition left the group".into()))?;
        }
    }
    Ok(GaloisGroup { level: k, elements, cayley })
}

impl GaloisGroup {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    /// `cayley()[a][b]` is the index of `σ_a ∘ σ_b`.
    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn identity_index(&self) -> Option<usize> {
        (0..self.order()).find(|&e| (0..self.order()).all(|x| self.cayley[e][x] == x && self.cayley[x][e] == x))
    }

    /// Identity, inverses and associativity, all read off the table.
    pub fn satisfies_group_axioms(&self) -> bool {
        let n = self.order();
        let Some(e) = self.identity_index() else {
            return false;
        };
        let inverses = (0..n).all(|a| (0..n).any(|b| self.cayley[a][b] == e && self.cayley[b][a] == e));
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.cayley[self.cayley[a][b]][c] == self.cayley[a][self.cayley[b][c]]))
        });
        inverses && assoc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let e = self.identity_index().unwrap_or(0);
        let mut x = a;
        let mut order = 1;
        while x != e {
            x = self.cayley[a][x];
            order += 1;
        }
        order
    }

    /// Some element whose powers exhaust the group.
    pub fn generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.element_order(a) == self.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator().is_some()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        if set.is_empty() || set.len() != h.len() || set.iter().any(|&x| x >= self.order()) {
            return false;
        }
        set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.cayley[a][b])))
    }
}

/// `Z_{2^k} ⊃ Z_{2^(k-1)} ⊃ … ⊃ {1}` as sorted index sets; each is the unique subgroup of its order.
pub fn subgroup_chain(g: &GaloisGroup) -> Vec<Vec<usize>> {
    let k = g.level();
    (0..=k)
        .rev()
        .map(|j| {
            let order = 1usize << j;
            (0..g.order()).filter(|&a| order.is_multiple_of(g.element_order(a))).collect()
        })
        .collect()
}

/// Generator `C_{|h|}(θ_k) = 2cos(|h|π / 2^(k+1))` of the field fixed by `h`, certified by
/// checking it is fixed by every element of `h` and moved by every element outside it.
pub fn fixed_field_generator(g: &GaloisGroup, h: &[usize]) -> Result<FieldElement> {
    if !g.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    let order = h.len();
    let generator = FieldElement::cos_term(g.level(), order, Rational::one())?;
    for (i, sigma) in g.elements().iter().enumerate() {
        let fixed = sigma.apply(&generator)? == generator;
        if fixed != h.contains(&i) {
            return Err(Error::NotSubgroup(format!("fixed field of {h:?} is not generated by C_{order}")));
        }
    }
    Ok(generator)
}
