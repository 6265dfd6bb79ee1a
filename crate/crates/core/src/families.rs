//! Named constructors for the group families.
//!
//! Subscript conventions: `Dic_n` has order `2n`, `D_n` is the symmetry group
//! of an n-gon (order `2n`), `SD_n`/`SA_n` have a cyclic subgroup of order `n`
//! and order `2n`. The diquaternion constructor takes the root-of-unity order
//! `m` and is displayed as `DQ_{2m}` (order `4m`).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::cyclotomic::{zeta, CyclotomicInt};
use crate::error::{Error, Result};
use crate::group::{generate_group, FiniteGroup, Word, DEFAULT_CAP};
use crate::matrix::{standard_matrices, Mat2};

fn is_power_of_two(n: usize) -> bool {
    n.is_power_of_two()
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(invalid("cyclic group needs n >= 1"));
    }
    let g = generate_group(&[standard_matrices(n).r], DEFAULT_CAP)?;
    let g = if n == 1 { g.with_generators(Vec::new())? } else { g };
    Ok(g.with_source(format!("C{n}")))
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(invalid(format!("dihedral group needs n >= 3, got {n}")));
    }
    let s = standard_matrices(n);
    Ok(generate_group(&[s.r, s.f], DEFAULT_CAP)?.with_source(format!("D{n}")))
}

/// `Dic_n = <R_n, S>`, order `2n`.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    if n % 2 == 1 {
        return Err(Error::OddParameter(n));
    }
    if n < 4 {
        return Err(invalid(format!("dicyclic group needs n >= 4, got {n}")));
    }
    let s = standard_matrices(n);
    let name = if is_power_of_two(n) {
        format!("Q{}", 2 * n)
    } else {
        format!("Dic{n}")
    };
    Ok(generate_group(&[s.r, s.s], DEFAULT_CAP)?.with_source(name))
}

/// Generalized quaternion group of the given order (a power of 2, at least 8).
pub fn generalized_quaternion(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !is_power_of_two(order) {
        return Err(invalid(format!("generalized quaternion order must be a power of 2 >= 8, got {order}")));
    }
    dicyclic(order / 2)
}

/// `<R_m, S, F>` over `Z[zeta_m]`, order `4m`, displayed as `DQ_{2m}`.
pub fn diquaternion(m: usize) -> Result<FiniteGroup> {
    if m < 4 || !is_power_of_two(m) {
        return Err(invalid(format!("diquaternion root order must be a power of 2 >= 4, got {m}")));
    }
    let s = standard_matrices(m);
    Ok(generate_group(&[s.r, s.s, s.f], DEFAULT_CAP)?.with_source(format!("DQ{}", 2 * m)))
}

/// The Pauli group on one qubit, `<X, Y, Z>`.
pub fn pauli1() -> Result<FiniteGroup> {
    let s = standard_matrices(4);
    Ok(generate_group(&[s.x, s.y, s.z], DEFAULT_CAP)?.with_source("pauli1"))
}

/// All `k` in `[1, n)` with `k^2 = 1 (mod n)`, by exhaustive scan.
pub fn square_roots_of_one(n: usize) -> Vec<usize> {
    (1..n).filter(|&k| (k * k) % n == 1 % n).collect()
}

/// `C_n ⋊ C_2` with `s r s = r^k`, built directly as a table on normal forms
/// `r^a s^b` (index `a + n b`).
pub fn semidirect_cn_c2(n: usize, k: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(invalid(format!("semidirect product needs n >= 2, got {n}")));
    }
    if k == 0 || k >= n || (k * k) % n != 1 || k.gcd(&n) != 1 {
        return Err(Error::InvalidTwist { n, k });
    }
    let idx = |a: usize, b: usize| a + n * b;
    let mut table = Vec::with_capacity(4 * n * n);
    for b in 0..2 {
        for a in 0..n {
            for d in 0..2 {
                for c in 0..n {
                    // (r^a s^b)(r^c s^d) = r^(a + k^b c) s^(b + d)
                    let twisted = if b == 1 { (k * c) % n } else { c };
                    table.push(idx((a + twisted) % n, (b + d) % 2));
                }
            }
        }
    }
    let labels = (0..2)
        .flat_map(|b| (0..n).map(move |a| (a, b)))
        .map(|(a, b)| {
            let r = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{a}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "1".to_string(),
                (_, 0) => r,
                _ => format!("{r}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_trusted(
        labels,
        table,
        0,
        vec![idx(1, 0), idx(0, 1)],
        format!("sdp:{n}:{k}"),
    ))
}

/// `<diag(zeta_n, corner), F>`.
fn twisted_pair(n: usize, corner: CyclotomicInt, name: String) -> Result<FiniteGroup> {
    let r = Mat2::diag(zeta(n, 1), corner)?;
    let f = standard_matrices(n).f;
    Ok(generate_group(&[r, f], DEFAULT_CAP)?.with_source(name))
}

fn check_two_power(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min || !is_power_of_two(n) {
        Err(invalid(format!("{what} needs a power of 2 >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// `<diag(zeta_n, -conj(zeta_n)), F>`.
pub fn semidihedral(n: usize) -> Result<FiniteGroup> {
    check_two_power(n, 8, "semidihedral group")?;
    twisted_pair(n, zeta(n, -1).neg(), format!("SD{n}"))
}

/// `<diag(zeta_n, -zeta_n), F>`.
pub fn semiabelian(n: usize) -> Result<FiniteGroup> {
    check_two_power(n, 8, "semiabelian group")?;
    twisted_pair(n, zeta(n, 1).neg(), format!("SA{n}"))
}

/// `<diag(zeta_n, zeta_n), F>`, isomorphic to `C_n × C_2`.
pub fn abelian_cn_c2(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(invalid(format!("C_n x C_2 needs n >= 2, got {n}")));
    }
    twisted_pair(n, zeta(n, 1), format!("C{n}xC2"))
}

/// Componentwise product on pairs; `(g, h)` has index `g |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (ng, nh) = (g.order(), h.order());
    let mut table = Vec::with_capacity(ng * nh * ng * nh);
    for a in 0..ng {
        for b in 0..nh {
            for c in 0..ng {
                for d in 0..nh {
                    table.push(g.mul(a, c) * nh + h.mul(b, d));
                }
            }
        }
    }
    let labels = (0..ng)
        .flat_map(|a| (0..nh).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.label(a), h.label(b)))
        .collect();
    let mut gens: Vec<usize> = g.generators().iter().map(|&x| x * nh + h.identity()).collect();
    gens.extend(h.generators().iter().map(|&y| g.identity() * nh + y));
    FiniteGroup::from_trusted(
        labels,
        table,
        g.identity() * nh + h.identity(),
        gens,
        format!("{}x{}", g.source(), h.source()),
    )
}

/// Relators `r^n, f^2, r f r f^-1` on generators `(r, f)`.
pub fn dihedral_relators(n: usize) -> Vec<Word> {
    Word::parse_all(&[&format!("r^{n}"), "f^2", "r f r f^-1"], &["r", "f"]).expect("well-formed")
}

/// Relators `r^n, s^4, r s r s^-1, r^(n/2) s^-2` on generators `(r, s)`.
pub fn dicyclic_relators(n: usize) -> Vec<Word> {
    Word::parse_all(
        &[&format!("r^{n}"), "s^4", "r s r s^-1", &format!("r^{} s^-2", n / 2)],
        &["r", "s"],
    )
    .expect("well-formed")
}

/// Relators of `<a, b, c | a^4 = c^2 = 1, a^2 = b^2, ab = ba, ac = ca,
/// cbc = a^2 b>` for the order-16 diquaternion group.
pub fn diquaternion_relators() -> Vec<Word> {
    Word::parse_all(
        &["a^4", "c^2", "a^2 b^-2", "a b a^-1 b^-1", "a c a^-1 c^-1", "c b c b^-1 a^-2"],
        &["a", "b", "c"],
    )
    .expect("well-formed")
}

/// Elements `(a, b, c) = (iI, S, F)` of `diquaternion(4)` satisfying
/// [`diquaternion_relators`].
pub fn diquaternion_presentation_generators(dq8: &FiniteGroup) -> Option<Vec<usize>> {
    let s = standard_matrices(4);
    let i = Mat2::diag(zeta(4, 1), zeta(4, 1)).ok()?;
    Some(vec![dq8.find_matrix(&i)?, dq8.find_matrix(&s.s)?, dq8.find_matrix(&s.f)?])
}

/// Relators `r^n, s^2, s r s r^-k` on generators `(r, s)`.
pub fn semidirect_relators(n: usize, k: usize) -> Vec<Word> {
    Word::parse_all(&[&format!("r^{n}"), "s^2", &format!("s r s r^-{k}")], &["r", "s"]).expect("well-formed")
}

/// A parsed group name.
///
/// Grammar (case-insensitive), factors joined by `x` form a direct product:
///
/// ```text
/// spec    := factor ("x" factor)*
/// factor  := "C" n | "D" n | "Dic" n | "Q" order | "DQ" order | "SD" n
///          | "SA" n | "sdp:" n ":" k | "pauli1"
/// ```
///
/// `CnxC2` (exactly two factors, the second `C2`) selects the matrix model
/// `<diag(zeta_n, zeta_n), F>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    /// Parameterized by the group order.
    GeneralizedQuaternion(usize),
    /// Parameterized by the root-of-unity order `m`; order `4m`.
    Diquaternion(usize),
    Semidihedral(usize),
    Semiabelian(usize),
    AbelianCnxC2(usize),
    SemidirectCnC2 { n: usize, k: usize },
    Pauli1Qubit,
    DirectProduct(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match self {
            FamilySpec::Cyclic(n) => cyclic(*n)?,
            FamilySpec::Dihedral(n) => dihedral(*n)?,
            FamilySpec::Dicyclic(n) => dicyclic(*n)?,
            FamilySpec::GeneralizedQuaternion(order) => generalized_quaternion(*order)?,
            FamilySpec::Diquaternion(m) => diquaternion(*m)?,
            FamilySpec::Semidihedral(n) => semidihedral(*n)?,
            FamilySpec::Semiabelian(n) => semiabelian(*n)?,
            FamilySpec::AbelianCnxC2(n) => abelian_cn_c2(*n)?,
            FamilySpec::SemidirectCnC2 { n, k } => semidirect_cn_c2(*n, *k)?,
            FamilySpec::Pauli1Qubit => pauli1()?,
            FamilySpec::DirectProduct(parts) => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or_else(|| invalid("empty direct product"))?.build()?;
                let mut acc = first;
                for p in iter {
                    acc = direct_product(&acc, &p.build()?);
                }
                acc
            }
        };
        Ok(g.with_source(self.to_string()))
    }
}

/// Spec strings of the built-in catalog, every entry of order at most 64.
pub const CATALOG_SPECS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C15", "C16", "C24", "C32",
    "C2xC2", "C4xC2", "C6xC2", "C8xC2", "C16xC2", "C2xC2xC2", "C4xC2xC2", "C2xC2xC2xC2", "C4xC4", "C3xC3",
    "D3", "D4", "D5", "D6", "D7", "D8", "D10", "D12", "D16",
    "Dic4", "Dic6", "Dic8", "Dic10", "Dic12", "Dic16", "Dic32",
    "SD8", "SD16", "SA8", "SA16", "DQ8", "DQ16", "DQ32", "pauli1",
    "sdp:12:5", "sdp:12:7", "D4xC2", "Q8xC2", "D3xC3", "D3xC2xC2",
];

/// The catalog groups of order at most `max_order`, in catalog order.
pub fn catalog(max_order: usize) -> Vec<FiniteGroup> {
    CATALOG_SPECS
        .iter()
        .map(|s| {
            let spec: FamilySpec = s.parse().expect("catalog specs parse");
            spec.build().expect("catalog specs build")
        })
        .filter(|g| g.order() <= max_order)
        .collect()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "C{n}"),
            FamilySpec::Dihedral(n) => write!(f, "D{n}"),
            FamilySpec::Dicyclic(n) => write!(f, "Dic{n}"),
            FamilySpec::GeneralizedQuaternion(order) => write!(f, "Q{order}"),
            FamilySpec::Diquaternion(m) => write!(f, "DQ{}", 2 * m),
            FamilySpec::Semidihedral(n) => write!(f, "SD{n}"),
            FamilySpec::Semiabelian(n) => write!(f, "SA{n}"),
            FamilySpec::AbelianCnxC2(n) => write!(f, "C{n}xC2"),
            FamilySpec::SemidirectCnC2 { n, k } => write!(f, "sdp:{n}:{k}"),
            FamilySpec::Pauli1Qubit => write!(f, "pauli1"),
            FamilySpec::DirectProduct(parts) => {
                let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

/// Syntax error in a family spec string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group spec {input:?}: {reason}")]
pub struct ParseSpecError {
    pub input: String,
    pub reason: String,
}

fn parse_factor(token: &str) -> std::result::Result<FamilySpec, String> {
    let t = token.to_ascii_lowercase();
    if t == "pauli1" {
        return Ok(FamilySpec::Pauli1Qubit);
    }
    if let Some(rest) = t.strip_prefix("sdp:") {
        let (n, k) = rest.split_once(':').ok_or("expected sdp:<n>:<k>")?;
        let n = n.parse().map_err(|_| format!("bad n in {token:?}"))?;
        let k = k.parse().map_err(|_| format!("bad k in {token:?}"))?;
        return Ok(FamilySpec::SemidirectCnC2 { n, k });
    }
    type Ctor = fn(usize) -> FamilySpec;
    let prefixes: [(&str, Ctor); 7] = [
        ("dic", FamilySpec::Dicyclic),
        ("dq", |order| FamilySpec::Diquaternion(order / 2)),
        ("sd", FamilySpec::Semidihedral),
        ("sa", FamilySpec::Semiabelian),
        ("d", FamilySpec::Dihedral),
        ("q", FamilySpec::GeneralizedQuaternion),
        ("c", FamilySpec::Cyclic),
    ];
    for (prefix, ctor) in prefixes {
        if let Some(num) = t.strip_prefix(prefix) {
            if !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit()) {
                let n: usize = num.parse().map_err(|_| format!("number too large in {token:?}"))?;
                if prefix == "dq" && n % 2 == 1 {
                    return Err(format!("DQ order must be even in {token:?}"));
                }
                return Ok(ctor(n));
            }
        }
    }
    Err(format!("unrecognized factor {token:?}"))
}

impl FromStr for FamilySpec {
    type Err = ParseSpecError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = |reason: String| ParseSpecError {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err("empty spec".into()));
        }
        let factors = trimmed
            .split(['x', 'X'])
            .map(parse_factor)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(match factors.as_slice() {
            [single] => single.clone(),
            [FamilySpec::Cyclic(n), FamilySpec::Cyclic(2)] => FamilySpec::AbelianCnxC2(*n),
            _ => FamilySpec::DirectProduct(factors),
        })
    }
}
