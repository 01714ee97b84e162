//! Rigidity certificates: search all pairs `(A, R)` with `A` normal abelian of order
//! `2^{2m}` and `R` an invariant alternating nondegenerate form, build every `G_b` and test
//! it against `G`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::table::TABLE_CAP;
use crate::groups::{invariant_skew_isos, tables_isomorphic, Group, TableGroup};

use super::twisted::{build_gb, TwistedGroup};

/// Largest group order accepted by the rigidity search.
pub const RIGIDITY_CAP: usize = 1024;

/// Cap on enumerated invariant forms per subgroup.
pub const FORM_CAP: usize = 1 << 16;

/// Cap on normal abelian subgroups explored.
pub const SUBGROUP_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Rigid,
    Candidates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidReason {
    /// No normal abelian subgroup of order `4^m` carries an invariant form.
    NoCandidates,
    /// Candidates exist and every `G_b` is isomorphic to `G`.
    AllIsomorphic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    #[serde(rename = "A_order")]
    pub a_order: usize,
    #[serde(rename = "A_members")]
    pub a_members: Vec<u32>,
    #[serde(rename = "R_index")]
    pub r_index: usize,
    pub b_trivial: Option<bool>,
    pub gb_isomorphic: bool,
    #[serde(skip)]
    pub gb: TwistedGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub group: String,
    pub order: usize,
    pub verdict: Verdict,
    pub reason: Option<RigidReason>,
    pub candidates: Vec<Candidate>,
}

fn is_power_of_four(n: usize) -> bool {
    n >= 4 && n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)
}

/// Exhaustive `(A, R)` search with every `G_b` isomorphism-tested against `G`.
pub fn rigidity_certificate(g: &TableGroup) -> Result<RigidityReport> {
    if g.order() > RIGIDITY_CAP {
        return Err(Error::TooLarge { what: "rigidity search".into(), count: g.order() as u64, cap: RIGIDITY_CAP as u64 });
    }
    let mut candidates = Vec::new();
    for a in g.normal_abelian_subgroups(is_power_of_four, SUBGROUP_CAP)? {
        let forms = invariant_skew_isos(g, &a, FORM_CAP)?;
        for (r_index, r) in forms.forms.iter().enumerate() {
            let gb = build_gb(g, &a, r)?;
            let table = gb.to_table()?;
            let gb_isomorphic = tables_isomorphic(&table, g).is_some();
            let b_trivial = gb.triviality.as_ref().and_then(|t| t.is_coboundary());
            if b_trivial == Some(true) && !gb_isomorphic {
                return Err(Error::Internal("a coboundary twist produced a nonisomorphic group".into()));
            }
            candidates.push(Candidate { a_order: a.order(), a_members: a.members.clone(), r_index, b_trivial, gb_isomorphic, gb });
        }
    }
    let (verdict, reason) = if candidates.is_empty() {
        (Verdict::Rigid, Some(RigidReason::NoCandidates))
    } else if candidates.iter().all(|c| c.gb_isomorphic) {
        (Verdict::Rigid, Some(RigidReason::AllIsomorphic))
    } else {
        (Verdict::Candidates, None)
    };
    Ok(RigidityReport { group: g.name(), order: g.order(), verdict, reason, candidates })
}

/// Groups isocategorical to `G` found by the `(A, R)` search, pairwise nonisomorphic,
/// starting with `G` itself.
pub fn isocategorical_variants(g: &TableGroup) -> Result<Vec<TableGroup>> {
    let report = rigidity_certificate(g)?;
    let mut out = vec![g.clone()];
    for c in report.candidates.iter().filter(|c| !c.gb_isomorphic) {
        let t = c.gb.to_table()?;
        if out.iter().all(|h| tables_isomorphic(h, &t).is_none()) {
            out.push(t);
        }
    }
    debug_assert!(out.iter().all(|t| t.order() <= TABLE_CAP));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};

    fn table(spec: &str) -> TableGroup {
        TableGroup::from_group(&build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap(), TABLE_CAP).unwrap().0
    }

    #[test]
    fn small_groups() {
        let q8 = rigidity_certificate(&table("quaternion8")).unwrap();
        assert_eq!((q8.verdict, q8.reason), (Verdict::Rigid, Some(RigidReason::NoCandidates)));
        let c15 = rigidity_certificate(&table("cyclic(15)")).unwrap();
        assert_eq!((c15.verdict, c15.reason), (Verdict::Rigid, Some(RigidReason::NoCandidates)));
        let d8 = rigidity_certificate(&table("dihedral8")).unwrap();
        assert_eq!((d8.verdict, d8.reason), (Verdict::Rigid, Some(RigidReason::AllIsomorphic)));
        assert!(!d8.candidates.is_empty());
    }

    #[test]
    fn abelian_groups_have_no_variants() {
        for spec in ["elementary_abelian(2,4)", "cyclic(16)", "elementary_abelian(2,3)"] {
            let g = table(spec);
            let v = isocategorical_variants(&g).unwrap();
            assert_eq!(v.len(), 1, "{spec}");
            let report = rigidity_certificate(&g).unwrap();
            assert!(report.candidates.iter().all(|c| c.gb.btilde.is_trivial()));
        }
    }

    #[test]
    fn report_serializes() {
        let d8 = rigidity_certificate(&table("dihedral8")).unwrap();
        let json = serde_json::to_value(&d8).unwrap();
        assert_eq!(json["verdict"], "RIGID");
        assert_eq!(json["candidates"][0]["A_order"], 4);
    }
}
