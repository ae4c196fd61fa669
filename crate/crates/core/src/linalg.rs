//! Dense Gauss–Jordan elimination over F_q and F_{q²}.

use crate::field::{FieldCtx, Fq, Fq2};

/// Minimal field interface the elimination routines need.
pub trait Scalars {
    type Elem: Copy + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: Self::Elem) -> bool;
    fn mul(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn sub(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn inv(&self, x: Self::Elem) -> Self::Elem;
}

impl Scalars for FieldCtx {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }

    fn one(&self) -> Fq {
        Fq::ONE
    }

    fn is_zero(&self, x: Fq) -> bool {
        x.is_zero()
    }

    #[inline]
    fn mul(&self, x: Fq, y: Fq) -> Fq {
        FieldCtx::mul(self, x, y)
    }

    #[inline]
    fn sub(&self, x: Fq, y: Fq) -> Fq {
        FieldCtx::sub(self, x, y)
    }

    fn inv(&self, x: Fq) -> Fq {
        FieldCtx::inv(self, x).expect("pivot is nonzero")
    }
}

/// F_{q²} viewed through its F_q context.
pub struct Ext<'a>(pub &'a FieldCtx);

impl Scalars for Ext<'_> {
    type Elem = Fq2;

    fn zero(&self) -> Fq2 {
        Fq2::ZERO
    }

    fn one(&self) -> Fq2 {
        Fq2::ONE
    }

    fn is_zero(&self, x: Fq2) -> bool {
        x.is_zero()
    }

    fn mul(&self, x: Fq2, y: Fq2) -> Fq2 {
        self.0.mul2(x, y)
    }

    fn sub(&self, x: Fq2, y: Fq2) -> Fq2 {
        self.0.sub2(x, y)
    }

    fn inv(&self, x: Fq2) -> Fq2 {
        self.0.inv2(x).expect("pivot is nonzero")
    }
}

/// A matrix in reduced row-echelon form: nonzero rows only, each with a
/// leading one in column `pivots[i]`, pivots strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<T> {
    pub cols: usize,
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Row-reduces `rows` (each of length `cols`) to reduced row-echelon form.
pub fn rref<S: Scalars>(k: &S, mut rows: Vec<Vec<S::Elem>>, cols: usize) -> Echelon<S::Elem> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !k.is_zero(rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let mut pivot_row = std::mem::take(&mut rows[rank]);
        let inv = k.inv(pivot_row[col]);
        for x in pivot_row[col..].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let factor = row[col];
            if k.is_zero(factor) {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = k.sub(*x, k.mul(factor, y));
            }
        }
        rows[rank] = pivot_row;
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { cols, rows, pivots }
}

/// Residue of `v` after clearing every pivot column; zero iff `v` lies in
/// the row space.
pub fn reduce<S: Scalars>(k: &S, ech: &Echelon<S::Elem>, v: &[S::Elem]) -> Vec<S::Elem> {
    let mut v = v.to_vec();
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        let factor = v[p];
        if k.is_zero(factor) {
            continue;
        }
        for (x, &y) in v[p..].iter_mut().zip(&row[p..]) {
            *x = k.sub(*x, k.mul(factor, y));
        }
    }
    v
}

pub fn in_row_space<S: Scalars>(k: &S, ech: &Echelon<S::Elem>, v: &[S::Elem]) -> bool {
    reduce(k, ech, v).iter().all(|&x| k.is_zero(x))
}

/// Basis of {x : A·xᵀ = 0} for A given by its rows.
pub fn nullspace<S: Scalars>(k: &S, rows: Vec<Vec<S::Elem>>, cols: usize) -> Vec<Vec<S::Elem>> {
    let ech = rref(k, rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![k.zero(); cols];
            v[free] = k.one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = k.sub(k.zero(), row[free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn v(k: &FieldCtx, xs: &[i64]) -> Vec<Fq> {
        xs.iter().map(|&x| k.from_int(x)).collect()
    }

    #[test]
    fn rank_and_membership() {
        let k = make_field(5, 1, None).unwrap();
        let rows = vec![v(&k, &[1, 2, 3]), v(&k, &[2, 4, 6]), v(&k, &[0, 1, 1])];
        let ech = rref(&k, rows, 3);
        assert_eq!(ech.rank(), 2);
        assert_eq!(ech.pivots, vec![0, 1]);
        assert!(in_row_space(&k, &ech, &v(&k, &[1, 3, 4])));
        assert!(!in_row_space(&k, &ech, &v(&k, &[0, 0, 1])));
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let k = make_field(3, 1, None).unwrap();
        let rows = vec![v(&k, &[1, 1, 0, 2]), v(&k, &[0, 1, 2, 1])];
        let null = nullspace(&k, rows.clone(), 4);
        assert_eq!(null.len(), 2);
        for x in &null {
            for r in &rows {
                let dot = r.iter().zip(x).fold(Fq::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn extension_rank() {
        let k = make_field(3, 1, None).unwrap();
        let ext = Ext(&k);
        let g = Fq2::GAMMA;
        // (1, γ) and (γ, δ) are F_{q²}-proportional
        let rows = vec![vec![Fq2::ONE, g], vec![g, k.mul2(g, g)]];
        assert_eq!(rref(&ext, rows, 2).rank(), 1);
    }
}
