//! 2x2 matrices over a single cyclotomic ring.

use std::fmt;

use crate::cyclotomic::{zeta, CyclotomicInt};
use crate::error::{Error, Result};

/// Row-major `[[a, b], [c, d]]`, all entries in `Z[zeta_m]` for one `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    order: usize,
    entries: [CyclotomicInt; 4],
}

impl Mat2 {
    pub fn new(entries: [CyclotomicInt; 4]) -> Result<Self> {
        let order = entries[0].order();
        if let Some(bad) = entries.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
        Ok(Mat2 { order, entries })
    }

    /// Matrix with small integer entries.
    pub fn from_ints(m: usize, [a, b, c, d]: [i64; 4]) -> Self {
        let e = |v| CyclotomicInt::from_int(m, v);
        Mat2 {
            order: m,
            entries: [e(a), e(b), e(c), e(d)],
        }
    }

    pub fn diag(a: CyclotomicInt, d: CyclotomicInt) -> Result<Self> {
        let m = a.order();
        Mat2::new([a, CyclotomicInt::zero(m), CyclotomicInt::zero(m), d])
    }

    pub fn anti_diag(b: CyclotomicInt, c: CyclotomicInt) -> Result<Self> {
        let m = b.order();
        Mat2::new([CyclotomicInt::zero(m), b, c, CyclotomicInt::zero(m)])
    }

    pub fn identity(m: usize) -> Self {
        Mat2::from_ints(m, [1, 0, 0, 1])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[CyclotomicInt; 4] {
        &self.entries
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        let dot = |x: &CyclotomicInt, y: &CyclotomicInt, z: &CyclotomicInt, w: &CyclotomicInt| {
            x.mul(y).and_then(|p| p.add(&z.mul(w)?))
        };
        Ok(Mat2 {
            order: self.order,
            entries: [dot(a, e, b, g)?, dot(a, f, b, h)?, dot(c, e, d, g)?, dot(c, f, d, h)?],
        })
    }

    pub fn eq_checked(&self, other: &Mat2) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(self.entries == other.entries)
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            order: self.order,
            entries: self.entries.clone().map(|e| e.neg()),
        }
    }

    /// Multiply every entry by a ring element.
    pub fn scale(&self, s: &CyclotomicInt) -> Result<Mat2> {
        let mut out = Vec::with_capacity(4);
        for e in &self.entries {
            out.push(s.mul(e)?);
        }
        Mat2::new(out.try_into().expect("four entries"))
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        (0..e).fold(Mat2::identity(self.order), |acc, _| {
            acc.mul(self).expect("same ring")
        })
    }
}

impl fmt::Display for Mat2 {
    /// Compact `[a,b;c,d]`; this string is the element's canonical label.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[{a},{b};{c},{d}]")
    }
}

/// The named matrices used by every family constructor, over `Z[zeta_m]`.
#[derive(Debug, Clone)]
pub struct StandardMatrices {
    /// `diag(zeta, conj(zeta))`
    pub r: Mat2,
    /// `[[0,-1],[1,0]]`, the quaternion `j`
    pub s: Mat2,
    /// `R * S`
    pub t: Mat2,
    /// `[[0,1],[1,0]]`, the complex reflection; also Pauli `X`
    pub f: Mat2,
    pub x: Mat2,
    /// `[[0, conj(zeta)], [zeta, 0]]`
    pub y: Mat2,
    /// `diag(1, -1)`
    pub z: Mat2,
}

pub fn standard_matrices(m: usize) -> StandardMatrices {
    assert!(m >= 1, "standard_matrices: m must be positive");
    let zeta_m = zeta(m, 1);
    let r = Mat2::diag(zeta_m.clone(), zeta_m.conjugate()).expect("same ring");
    let s = Mat2::from_ints(m, [0, -1, 1, 0]);
    let t = r.mul(&s).expect("same ring");
    let f = Mat2::from_ints(m, [0, 1, 1, 0]);
    let y = Mat2::anti_diag(zeta_m.conjugate(), zeta_m).expect("same ring");
    let z = Mat2::from_ints(m, [1, 0, 0, -1]);
    StandardMatrices {
        r,
        s,
        t,
        x: f.clone(),
        f,
        y,
        z,
    }
}
