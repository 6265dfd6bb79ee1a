//! The claim suite behind `grouplab verify`.
//!
//! Claim ids are stable: scripts and tests select claims by id.

use std::collections::BTreeSet;
use std::fmt::Write;

use grouplab_core::families::*;
use grouplab_core::lattice::{all_subgroups, hasse, intersect, lattices_equal, reduced_lattice, subgroup_class, unicorns};
use grouplab_core::structure::{
    central_product_decompositions, cycle_graph, cycle_graphs_isomorphic, isomorphic, iso_label, semidirect_decompositions,
    subgroup_label,
};
use grouplab_core::{standard_matrices, FiniteGroup, Mat2};
use serde::Serialize;

use crate::document::GroupDocument;

type Check = fn(&Context) -> Result<String, String>;

/// Extra inputs for claims that also run on user-supplied tables.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub tables: Vec<(String, GroupDocument)>,
}

pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
    check: Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub results: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }

    /// Fixed-width table; ANSI colours only when `color` is set.
    pub fn to_table(&self, color: bool) -> String {
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        writeln!(out, "{:<width$}  STATUS  DETAIL", "CLAIM").expect("write to string");
        for r in &self.results {
            let status = match (r.status, color) {
                (Status::Pass, true) => "\x1b[32mPASS\x1b[0m",
                (Status::Fail, true) => "\x1b[31mFAIL\x1b[0m",
                (Status::Pass, false) => "PASS",
                (Status::Fail, false) => "FAIL",
            };
            writeln!(out, "{:<width$}  {status}    {}", r.id, r.detail).expect("write to string");
        }
        let passed = self.results.iter().filter(|r| r.status == Status::Pass).count();
        writeln!(out, "{passed}/{} claims passed", self.results.len()).expect("write to string");
        out
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T>(r: grouplab_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn iso(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool, String> {
    Ok(ok(isomorphic(a, b))?.is_some())
}

fn minus_one(g: &FiniteGroup, m: usize) -> Result<usize, String> {
    g.find_matrix(&Mat2::identity(m).neg()).ok_or_else(|| "-I missing".to_string())
}

fn orders(_: &Context) -> Result<String, String> {
    for (name, g, want) in [
        ("Q8", dicyclic(4), 8),
        ("Dic6", dicyclic(6), 12),
        ("DQ8", diquaternion(4), 16),
        ("DQ16", diquaternion(8), 32),
        ("SD8", semidihedral(8), 16),
        ("SA8", semiabelian(8), 16),
        ("C8xC2", abelian_cn_c2(8), 16),
    ] {
        let order = ok(g)?.order();
        ensure!(order == want, "|{name}| = {order}, expected {want}");
    }
    Ok("Q8, Dic6, DQ8, DQ16, SD8, SA8, C8xC2 have the stated orders".into())
}

fn presentations(_: &Context) -> Result<String, String> {
    for n in 3..=12 {
        ensure!(ok(ok(dihedral(n))?.check_relations(&dihedral_relators(n)))?, "D{n}");
    }
    for n in [4, 6, 8, 16] {
        ensure!(ok(ok(dicyclic(n))?.check_relations(&dicyclic_relators(n)))?, "Dic{n}");
    }
    let dq = ok(diquaternion(4))?;
    let gens = diquaternion_presentation_generators(&dq).ok_or("DQ8 generators missing")?;
    ensure!(ok(dq.check_relations_with(&gens, &diquaternion_relators()))?, "DQ8");
    Ok("dihedral, dicyclic and DQ8 relators hold".into())
}

fn quotients(_: &Context) -> Result<String, String> {
    let dic6 = ok(dicyclic(6))?;
    let r3 = dic6.power(dic6.generators()[0], 3);
    ensure!(iso(&ok(dic6.quotient(&dic6.cyclic_subgroup(r3)))?, &ok(dihedral(3))?)?, "Dic6/<r^3>");
    for (n, d) in [(8, 4), (16, 8)] {
        let g = ok(dicyclic(n))?;
        let q = ok(g.quotient(&g.cyclic_subgroup(minus_one(&g, n)?)))?;
        ensure!(iso(&q, &ok(dihedral(d))?)?, "Q{}/<-1>", 2 * n);
    }
    let dq = ok(diquaternion(4))?;
    let q = ok(dq.quotient(&dq.cyclic_subgroup(minus_one(&dq, 4)?)))?;
    ensure!(iso_label(&q) == "C2^3", "DQ8/<-I> is {}", iso_label(&q));
    Ok("Dic6/<r^3> = D3, Q16/<-1> = D4, Q32/<-1> = D8, DQ8/<-I> = C2^3".into())
}

fn dicyclic_splittings(_: &Context) -> Result<String, String> {
    let d = ok(semidirect_decompositions(&ok(dicyclic(6))?))?;
    ensure!(d.iter().any(|x| x.labels == ["C3".to_string(), "C4".to_string()]), "Dic6 lacks C3 x| C4");
    for n in [8, 16] {
        ensure!(ok(semidirect_decompositions(&ok(dicyclic(n))?))?.is_empty(), "Q{} splits", 2 * n);
    }
    Ok("Dic6 = C3 x| C4; Q16 and Q32 do not split".into())
}

fn quaternion_intersections(_: &Context) -> Result<String, String> {
    for n in [8, 16, 32] {
        let g = ok(dicyclic(n))?;
        let minus = minus_one(&g, n)?;
        let subs: Vec<_> = ok(all_subgroups(&g))?.into_iter().filter(|s| !s.is_trivial()).collect();
        for a in &subs {
            for b in &subs {
                ensure!(intersect(a, b).contains(minus), "Q{}: {a:?} and {b:?}", 2 * n);
            }
        }
    }
    Ok("nontrivial subgroups of Q16, Q32, Q64 pairwise meet in <-1>".into())
}

fn reduced_quaternion_lattices(_: &Context) -> Result<String, String> {
    let sizes = |g: &FiniteGroup| -> Result<(usize, Vec<usize>), String> {
        let r = ok(reduced_lattice(g))?;
        let mut s: Vec<usize> = r.classes.iter().map(|c| c.size()).collect();
        s.sort_unstable();
        Ok((r.subgroup_count(), s))
    };
    let (count, s) = sizes(&ok(dicyclic(8))?)?;
    ensure!(count == 11 && s == [1, 1, 1, 1, 1, 1, 1, 2, 2], "Q16: {count} subgroups, classes {s:?}");
    let (count, s) = sizes(&ok(dicyclic(16))?)?;
    ensure!(count == 20 && s.len() == 12, "Q32: {count} subgroups in {} classes", s.len());
    Ok("Q16: 11 subgroups in 9 classes; Q32: 20 subgroups in 12 classes".into())
}

fn dq8_structure(_: &Context) -> Result<String, String> {
    let dq = ok(diquaternion(4))?;
    ensure!(iso_label(&dq.subgroup_as_group(&dq.center())) == "C4", "center is not C4");
    let d = ok(semidirect_decompositions(&dq))?;
    let kernels: BTreeSet<String> = d.iter().filter(|x| x.parts[1].size() == 2).map(|x| x.labels[0].clone()).collect();
    ensure!(kernels == ["C4xC2", "D4", "Q8"].map(String::from).into(), "kernels {kernels:?}");
    let central = ok(central_product_decompositions(&dq))?;
    for pair in [["Q8", "C4"], ["D4", "C4"]] {
        let c = central
            .iter()
            .find(|c| c.labels == pair.map(String::from))
            .ok_or_else(|| format!("{pair:?} missing"))?;
        ensure!(intersect(&c.parts[0], &c.parts[1]).size() == 2, "{pair:?} intersection");
    }
    Ok("center C4; kernels D4, C4xC2, Q8 over C2; Q8 o C4 and D4 o C4".into())
}

fn dq16_structure(_: &Context) -> Result<String, String> {
    let dq = ok(diquaternion(8))?;
    let s = standard_matrices(8);
    let find = |m: &Mat2| dq.find_matrix(m).ok_or_else(|| format!("{m} missing"));
    let xy = dq.generated_by(&[find(&s.x)?, find(&s.y)?]);
    let rz = dq.generated_by(&[find(&ok(s.x.mul(&s.y))?)?, find(&s.z)?]);
    ensure!(subgroup_label(&dq, &xy) == "D8" && 2 * xy.size() == 32, "<X,Y>");
    ensure!(subgroup_label(&dq, &rz) == "C8xC2" && 2 * rz.size() == 32, "<XY,Z>");
    let labels: BTreeSet<[String; 2]> = ok(central_product_decompositions(&dq))?
        .into_iter()
        .filter(|c| c.parts[1] == dq.center())
        .map(|c| c.labels)
        .collect();
    for part in ["Q16", "D8"] {
        ensure!(labels.contains(&[part.to_string(), "C4".to_string()]), "{part} o C4 missing");
    }
    Ok("<X,Y> = D8, <XY,Z> = C8xC2; Q16 o C4 and D8 o C4".into())
}

fn twists_c16(_: &Context) -> Result<String, String> {
    let roots = square_roots_of_one(16);
    ensure!(roots == [1, 7, 9, 15], "roots {roots:?}");
    let groups: Vec<FiniteGroup> = roots.iter().map(|&k| ok(semidirect_cn_c2(16, k))).collect::<Result<_, _>>()?;
    for i in 0..4 {
        for j in 0..i {
            ensure!(!iso(&groups[i], &groups[j])?, "k={} ~ k={}", roots[i], roots[j]);
        }
    }
    ensure!(groups[0].is_abelian() && iso(&groups[3], &ok(dihedral(16))?)?, "k=1 or k=15 misidentified");
    Ok("four pairwise distinct twists".into())
}

fn matrix_table_cross_check(_: &Context) -> Result<String, String> {
    for n in [8, 16] {
        ensure!(iso(&ok(semidihedral(n))?, &ok(semidirect_cn_c2(n, n / 2 - 1))?)?, "SD{n}");
        ensure!(iso(&ok(semiabelian(n))?, &ok(semidirect_cn_c2(n, n / 2 + 1))?)?, "SA{n}");
    }
    Ok("matrix and table models agree".into())
}

fn sd8_d8(_: &Context) -> Result<String, String> {
    let sd = ok(semidihedral(8))?;
    for (name, g, want) in [("SD8", sd.clone(), 15), ("D8", ok(dihedral(8))?, 19)] {
        let count = ok(all_subgroups(&g))?.len();
        ensure!(count == want, "{name} has {count} subgroups");
        let kernels: BTreeSet<String> = ok(semidirect_decompositions(&g))?
            .into_iter()
            .filter(|d| d.parts[1].size() == 2)
            .map(|d| d.labels[0].clone())
            .collect();
        ensure!(kernels.len() >= 2, "{name} kernels {kernels:?}");
    }
    let r4 = sd.power(sd.generators()[0], 4);
    ensure!(iso(&ok(sd.quotient(&sd.cyclic_subgroup(r4)))?, &ok(dihedral(4))?)?, "SD8/<r^4>");
    Ok("SD8: 15 subgroups, D8: 19; both split two ways; SD8/<r^4> = D4".into())
}

fn mystery_lattice(_: &Context) -> Result<String, String> {
    let (ab, sa) = (ok(abelian_cn_c2(8))?, ok(semiabelian(8))?);
    let (la, ls) = (ok(hasse(&ab))?, ok(hasse(&sa))?);
    ensure!(la.nodes.len() == 11 && ls.nodes.len() == 11, "subgroup counts");
    ensure!(lattices_equal(&la, &ls).is_some(), "lattices differ");
    ensure!(!iso(&ab, &sa)?, "groups isomorphic");
    let normal = ls.nodes.iter().filter(|h| sa.is_normal(h)).count();
    let uni = unicorns(&ls);
    ensure!(normal == 9 && uni.len() == 7, "{normal} normal, {} unicorns", uni.len());
    let f = Mat2::from_ints(8, [0, 1, 1, 0]);
    let s = sa.cyclic_subgroup(sa.find_matrix(&f).ok_or("F missing")?);
    let odd: Vec<_> = ls
        .nodes
        .iter()
        .filter(|h| !uni.contains(h) && 2 * h.size() != 16)
        .cloned()
        .collect();
    ensure!(ok(subgroup_class(&sa, &s))? == odd && odd.len() == 2, "non-unicorn class {odd:?}");
    Ok("same lattice, not isomorphic; SA8: 9 normal, 7 unicorns".into())
}

fn cycle_graphs(_: &Context) -> Result<String, String> {
    let same = |a: &FiniteGroup, b: &FiniteGroup| cycle_graphs_isomorphic(&cycle_graph(a), &cycle_graph(b)).is_some();
    ensure!(same(&ok(abelian_cn_c2(8))?, &ok(semiabelian(8))?), "C8xC2 vs SA8");
    let c4c2c2 = direct_product(&ok(cyclic(4))?, &ok(abelian_cn_c2(2))?);
    let dq = ok(diquaternion(4))?;
    ensure!(same(&c4c2c2, &dq), "C4xC2^2 vs DQ8");
    ensure!(lattices_equal(&ok(hasse(&c4c2c2))?, &ok(hasse(&dq))?).is_none(), "lattices agree");
    Ok("cycle graphs agree, lattices differ".into())
}

fn six_groups_order_32(_: &Context) -> Result<String, String> {
    let groups = [
        ok(cyclic(32))?,
        ok(abelian_cn_c2(16))?,
        ok(dihedral(16))?,
        ok(semidihedral(16))?,
        ok(semiabelian(16))?,
        ok(dicyclic(16))?,
    ];
    for g in &groups {
        ensure!(g.order() == 32 && g.elements().any(|x| g.element_order(x) == 16), "{}", g.source());
    }
    for i in 0..6 {
        for j in 0..i {
            ensure!(!iso(&groups[i], &groups[j])?, "{} ~ {}", groups[i].source(), groups[j].source());
        }
    }
    Ok("C32, C16xC2, D16, SD16, SA16, Q32 pairwise distinct".into())
}

fn unicorns_normal(_: &Context) -> Result<String, String> {
    let groups = catalog(32);
    for g in &groups {
        for u in unicorns(&ok(hasse(g))?) {
            ensure!(g.is_normal(&u), "{}: {u:?}", g.source());
        }
    }
    Ok(format!("{} catalog groups", groups.len()))
}

/// Every catalog group survives a JSON round trip as a valid table, and so
/// does every supplied table.
fn latin_square(ctx: &Context) -> Result<String, String> {
    let mut docs: Vec<(String, GroupDocument)> = catalog(16)
        .iter()
        .map(|g| (g.source().to_string(), GroupDocument::from_group(g, g.source(), g.source())))
        .collect();
    docs.extend(ctx.tables.iter().cloned());
    for (name, doc) in &docs {
        let text = doc.to_json();
        let back = GroupDocument::from_json(&text).map_err(|e| format!("{name}: {e}"))?;
        back.to_group().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} tables are Latin squares with identity and associative product", docs.len()))
}

pub fn claims() -> Vec<Claim> {
    let c = |id, anchor, check| Claim { id, anchor, check };
    vec![
        c("orders", "orders of the named groups", orders as Check),
        c("presentations", "dihedral, dicyclic and diquaternion presentations", presentations),
        c("quotients", "quotients by the central involution", quotients),
        c("dicyclic-splittings", "Dic6 as C3 x| C4; generalized quaternions do not split", dicyclic_splittings),
        c("quaternion-intersections", "nontrivial subgroups of Q_2^n share -1", quaternion_intersections),
        c("reduced-quaternion-lattices", "reduced subgroup lattices of Q16 and Q32", reduced_quaternion_lattices),
        c("dq8-structure", "DQ8 center, splittings and central products", dq8_structure),
        c("dq16-structure", "DQ16 subgroups and central products", dq16_structure),
        c("twists-c16", "the four twists of C16 x| C2", twists_c16),
        c("matrix-table-cross-check", "matrix models of SD_n and SA_n", matrix_table_cross_check),
        c("sd8-d8", "subgroup lattices of SD8 and D8", sd8_d8),
        c("mystery-lattice", "C8xC2 and SA8 share a lattice", mystery_lattice),
        c("cycle-graphs", "equal cycle graphs, different lattices", cycle_graphs),
        c("six-groups-order-32", "order-32 groups with a cyclic index-2 subgroup", six_groups_order_32),
        c("unicorns-normal", "lattice-invariant subgroups are normal", unicorns_normal),
        c("latin-square", "group tables are valid", latin_square),
    ]
}

/// Runs the selected claims (all when `only` is empty).
pub fn run(only: &[String], ctx: &Context) -> Result<VerificationReport, String> {
    let registry = claims();
    if let Some(unknown) = only.iter().find(|id| !registry.iter().any(|c| c.id == id.as_str())) {
        return Err(format!("unknown claim {unknown:?}"));
    }
    let results = registry
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|id| id == c.id))
        .map(|c| {
            let (status, detail) = match (c.check)(ctx) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            };
            ClaimResult {
                id: c.id.to_string(),
                anchor: c.anchor.to_string(),
                status,
                detail,
            }
        })
        .collect();
    Ok(VerificationReport { results })
}
