use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Linear combination of basis indices.
pub type LieVector = BTreeMap<usize, BigRational>;

/// Finite-dimensional Lie algebra over `Q` given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDatum {
    basis: Vec<String>,
    bracket: Vec<Vec<LieVector>>,
}

fn add_into(acc: &mut LieVector, v: &LieVector, c: &BigRational) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(BigRational::zero);
        *e += x * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// `([x, y], sum coef * z)` as `(x, y, [(z, coef)])`.
pub type Bracket = (String, String, Vec<(String, BigRational)>);

impl LieDatum {
    /// `brackets` lists `[x, y] = sum coef * z`; the opposite order is
    /// filled in by antisymmetry and unlisted pairs bracket to zero.
    pub fn new(basis: Vec<String>, brackets: &[Bracket]) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Validation("Lie algebra basis is empty".into()));
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::Validation(format!("duplicate basis element '{b}'")));
            }
        }
        let index = |name: &str| {
            basis
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        let mut bracket = vec![vec![LieVector::new(); n]; n];
        let mut set = vec![vec![false; n]; n];
        for (x, y, value) in brackets {
            let (i, j) = (index(x)?, index(y)?);
            if i == j {
                return Err(Error::Validation(format!(
                    "bracket [{x}, {x}] must be zero"
                )));
            }
            if set[i][j] {
                return Err(Error::Validation(format!("bracket [{x}, {y}] given twice")));
            }
            let mut v = LieVector::new();
            for (z, c) in value {
                let mut single = LieVector::new();
                single.insert(index(z)?, BigRational::from_integer(1.into()));
                add_into(&mut v, &single, c);
            }
            let mut neg = LieVector::new();
            add_into(&mut neg, &v, &BigRational::from_integer((-1).into()));
            bracket[i][j] = v;
            bracket[j][i] = neg;
            set[i][j] = true;
            set[j][i] = true;
        }
        let datum = LieDatum { basis, bracket };
        datum.check_jacobi()?;
        Ok(datum)
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LieVector {
        &self.bracket[i][j]
    }

    /// Bracket of a vector with a basis element.
    fn bracket_vec(&self, v: &LieVector, k: usize) -> LieVector {
        let mut out = LieVector::new();
        for (i, c) in v {
            add_into(&mut out, &self.bracket[*i][k], c);
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut sum = self.bracket_vec(&self.bracket[i][j], k);
                    add_into(
                        &mut sum,
                        &self.bracket_vec(&self.bracket[j][k], i),
                        &BigRational::from_integer(1.into()),
                    );
                    add_into(
                        &mut sum,
                        &self.bracket_vec(&self.bracket[k][i], j),
                        &BigRational::from_integer(1.into()),
                    );
                    if !sum.is_empty() {
                        return Err(Error::Validation(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Antisymmetric bilinear form on a Lie algebra satisfying the 2-cocycle
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSpec {
    values: Vec<Vec<BigRational>>,
}

impl CocycleSpec {
    pub fn zero(lie: &LieDatum) -> Self {
        let n = lie.dim();
        CocycleSpec {
            values: vec![vec![BigRational::zero(); n]; n],
        }
    }

    /// `entries` lists `c(x, y)`; the opposite order is filled in by
    /// antisymmetry.
    pub fn new(lie: &LieDatum, entries: &[(String, String, BigRational)]) -> Result<Self> {
        let mut c = Self::zero(lie);
        let mut set = vec![vec![false; lie.dim()]; lie.dim()];
        for (x, y, v) in entries {
            let (i, j) = (lie.index(x)?, lie.index(y)?);
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Validation(format!("c({x}, {x}) must be zero")));
                }
                continue;
            }
            if set[i][j] {
                return Err(Error::Validation(format!("c({x}, {y}) given twice")));
            }
            set[i][j] = true;
            set[j][i] = true;
            c.values[i][j] = v.clone();
            c.values[j][i] = -v.clone();
        }
        c.check(lie)?;
        Ok(c)
    }

    pub fn value(&self, i: usize, j: usize) -> &BigRational {
        &self.values[i][j]
    }

    pub fn neg(&self) -> Self {
        CocycleSpec {
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| -v.clone()).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    fn on_vector(&self, v: &LieVector, k: usize) -> BigRational {
        v.iter().fold(BigRational::zero(), |acc, (i, c)| {
            acc + c * &self.values[*i][k]
        })
    }

    /// `c([x,y],z) + c([y,z],x) + c([z,x],y) = 0` on all basis triples.
    pub fn check(&self, lie: &LieDatum) -> Result<()> {
        let n = lie.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = self.on_vector(lie.bracket(i, j), k)
                        + self.on_vector(lie.bracket(j, k), i)
                        + self.on_vector(lie.bracket(k, i), j);
                    if !s.is_zero() {
                        return Err(Error::Cocycle {
                            x: lie.basis()[i].clone(),
                            y: lie.basis()[j].clone(),
                            z: lie.basis()[k].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Abelian plane with `c(x, y) = 1`; the Sridharan algebra is the Weyl
/// algebra.
pub fn weyl_datum() -> (LieDatum, CocycleSpec) {
    let lie = LieDatum::new(vec!["x".into(), "y".into()], &[]).unwrap();
    let c = CocycleSpec::new(&lie, &[("x".into(), "y".into(), r(1))]).unwrap();
    (lie, c)
}

/// Heisenberg algebra `[x, y] = z` with `c(x, y) = 1`.
pub fn heisenberg_datum() -> (LieDatum, CocycleSpec) {
    let lie = LieDatum::new(
        vec!["x".into(), "y".into(), "z".into()],
        &[("x".into(), "y".into(), vec![("z".into(), r(1))])],
    )
    .unwrap();
    let c = CocycleSpec::new(&lie, &[("x".into(), "y".into(), r(1))]).unwrap();
    (lie, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_identity_is_checked() {
        // on a 3-dimensional algebra the identity is one linear condition;
        // for Heisenberg it is vacuous
        let (lie, _) = heisenberg_datum();
        assert!(CocycleSpec::new(&lie, &[("x".into(), "z".into(), r(1))]).is_ok());
        // [x, y] = x with z central forces c(x, z) = 0
        let aff = LieDatum::new(
            vec!["x".into(), "y".into(), "z".into()],
            &[("x".into(), "y".into(), vec![("x".into(), r(1))])],
        )
        .unwrap();
        let bad = CocycleSpec::new(&aff, &[("x".into(), "z".into(), r(1))]);
        assert!(matches!(bad, Err(Error::Cocycle { .. })));
        assert!(CocycleSpec::new(&aff, &[("y".into(), "z".into(), r(1))]).is_ok());
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        let bad = LieDatum::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                ("a".into(), "b".into(), vec![("a".into(), r(1))]),
                ("a".into(), "c".into(), vec![("b".into(), r(1))]),
            ],
        );
        assert!(bad.is_err());
    }
}
