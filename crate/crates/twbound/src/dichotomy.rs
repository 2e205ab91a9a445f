//! The boundedness decision procedure over a forbidden set F, witness
//! families for the unbounded verdicts, and an empirical survey harness
//! that samples F-free graphs and measures their tree-width.
//!
//! Tree-width of the hereditary class Free(F) is bounded exactly when F
//! contains a complete graph, a complete bipartite graph, a tripod, and the
//! line graph of a tripod. A single member may fill several slots (K_2
//! fills all four; the claw is both a tripod and a complete bipartite
//! graph).

use crate::decomposition::{exact_treewidth, TreewidthOutcome};
use crate::detection::{is_f_free, Freeness};
use crate::extraction::constants::{ramsey_upper, Value};
use crate::graph::generators::{generate, GeneratorSpec};
use crate::graph::{line_graph, random_graph, splitmix64, Graph};
use crate::recognition::{
    is_complete, is_complete_bipartite, is_line_of_tripod, is_tripod, ComponentShape,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DichotomyError {
    #[error("forbidden set must be non-empty")]
    EmptyForbiddenSet,
    #[error("forbidden member {0:?} is the null graph")]
    NullMember(String),
    #[error("witness family index must be at least 1")]
    BadFamilyIndex,
}

/// A named forbidden set.
#[derive(Clone, Debug)]
pub struct ForbiddenSet {
    members: Vec<(String, Graph)>,
}

impl ForbiddenSet {
    pub fn new(members: Vec<(String, Graph)>) -> Result<Self, DichotomyError> {
        if members.is_empty() {
            return Err(DichotomyError::EmptyForbiddenSet);
        }
        for (name, g) in &members {
            if g.n() == 0 {
                return Err(DichotomyError::NullMember(name.clone()));
            }
        }
        Ok(ForbiddenSet { members })
    }

    /// Members built from generator spec strings, named by the spec.
    pub fn from_specs(specs: &[&str]) -> Result<Self, DichotomyError> {
        let members = specs
            .iter()
            .map(|s| {
                let spec: GeneratorSpec = s.parse().map_err(|_| DichotomyError::NullMember((*s).into()))?;
                let g = generate(&spec).map_err(|_| DichotomyError::NullMember((*s).into()))?;
                Ok(((*s).to_string(), g))
            })
            .collect::<Result<Vec<_>, DichotomyError>>()?;
        ForbiddenSet::new(members)
    }

    pub fn members(&self) -> &[(String, Graph)] {
        &self.members
    }

    pub fn graphs(&self) -> Vec<Graph> {
        self.members.iter().map(|(_, g)| g.clone()).collect()
    }
}

/// One of the four critical classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Complete,
    CompleteBipartite,
    Tripod,
    LineOfTripod,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Complete,
        Criterion::CompleteBipartite,
        Criterion::Tripod,
        Criterion::LineOfTripod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Complete => "complete",
            Criterion::CompleteBipartite => "complete_bipartite",
            Criterion::Tripod => "tripod",
            Criterion::LineOfTripod => "line_of_tripod",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyVerdict {
    /// First member satisfying each criterion, by name.
    pub complete: Option<String>,
    pub complete_bipartite: Option<String>,
    pub tripod: Option<String>,
    pub line_of_tripod: Option<String>,
    pub bounded: bool,
    /// Criteria with no witness, in fixed order.
    pub missing: Vec<&'static str>,
    /// Decimal rendering of the proof parameter p when bounded: large enough
    /// that every tripod component fits in S_p, every line-of-tripod
    /// component fits in T_p, and p reaches the biclique threshold R(s, c).
    pub suggested_p: Option<String>,
    pub notes: Vec<String>,
}

fn arm_requirement_tripod(shapes: &[ComponentShape]) -> u64 {
    shapes
        .iter()
        .map(|s| match *s {
            // P_n embeds induced in S_p along two arms iff n <= 2p + 1.
            ComponentShape::Path { len } => (len as u64).saturating_sub(1).div_ceil(2),
            ComponentShape::TripodArm3 { arms } => arms[0] as u64,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

fn arm_requirement_line_tripod(shapes: &[ComponentShape]) -> u64 {
    shapes
        .iter()
        .map(|s| match *s {
            // P_n embeds induced in T_p across one triangle edge iff
            // n <= 2p + 2.
            ComponentShape::Path { len } => (len as u64).saturating_sub(2).div_ceil(2),
            ComponentShape::Triangle3Arms { arms } => arms[0] as u64,
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Part sizes of a recognized complete bipartite graph (larger part first).
fn bipartite_parts(g: &Graph) -> (usize, usize) {
    if g.n() <= 1 {
        return (g.n(), 0);
    }
    let comps = g.complement().components();
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    (sizes[0], sizes.get(1).copied().unwrap_or(0))
}

/// Decides tree-width boundedness of Free(F): bounded exactly when all four
/// criteria have a witness in F. With `lenient_bipartite`, an edgeless
/// member on two or more vertices is also accepted for the complete
/// bipartite slot (as a degenerate K_{n,0}); the divergence is noted.
pub fn decide_bounded(forbidden: &ForbiddenSet, lenient_bipartite: bool) -> DichotomyVerdict {
    let mut witness: [Option<usize>; 4] = [None; 4];
    let mut notes = Vec::new();
    for (idx, (name, g)) in forbidden.members.iter().enumerate() {
        let fills = [
            is_complete(g).member,
            {
                let standard = is_complete_bipartite(g).member;
                if !standard && lenient_bipartite && g.n() >= 2 && g.edge_count() == 0 {
                    notes.push(format!(
                        "edgeless member {name:?} accepted as complete bipartite (lenient mode)"
                    ));
                    true
                } else {
                    standard
                }
            },
            is_tripod(g).member,
            is_line_of_tripod(g, false).member,
        ];
        for (slot, fill) in fills.into_iter().enumerate() {
            if fill && witness[slot].is_none() {
                witness[slot] = Some(idx);
            }
        }
    }
    let name_of = |slot: usize| witness[slot].map(|i| forbidden.members[i].0.clone());
    let missing: Vec<&'static str> = Criterion::ALL
        .iter()
        .enumerate()
        .filter(|(slot, _)| witness[*slot].is_none())
        .map(|(_, c)| c.name())
        .collect();
    let bounded = missing.is_empty();
    let suggested_p = bounded.then(|| {
        suggested_p(forbidden, &witness, lenient_bipartite).to_decimal_string()
    });
    DichotomyVerdict {
        complete: name_of(0),
        complete_bipartite: name_of(1),
        tripod: name_of(2),
        line_of_tripod: name_of(3),
        bounded,
        missing,
        suggested_p,
        notes,
    }
}

fn suggested_p(
    forbidden: &ForbiddenSet,
    witness: &[Option<usize>; 4],
    lenient_bipartite: bool,
) -> Value {
    let tripod_arms = witness[2]
        .map(|i| arm_requirement_tripod(&is_tripod(&forbidden.members[i].1).shapes))
        .unwrap_or(0);
    let ltripod_arms = witness[3]
        .map(|i| {
            arm_requirement_line_tripod(&is_line_of_tripod(&forbidden.members[i].1, false).shapes)
        })
        .unwrap_or(0);
    // Smallest complete member and smallest complete bipartite member by
    // vertex count (ties by list order).
    let smallest = |accept: &dyn Fn(&Graph) -> bool| -> Option<&Graph> {
        forbidden
            .members
            .iter()
            .map(|(_, g)| g)
            .filter(|g| accept(g))
            .min_by_key(|g| g.n())
    };
    let clique_size = smallest(&|g| is_complete(g).member).map_or(1, |g| g.n());
    let part = smallest(&|g| {
        is_complete_bipartite(g).member
            || (lenient_bipartite && g.n() >= 2 && g.edge_count() == 0)
    })
    .map_or(1, |g| bipartite_parts(g).0);
    // Forbidding K_c induced and K_{s,s'} induced forbids K_{t,t} subgraphs
    // for every t >= R(max(s, s'), c).
    let threshold = ramsey_upper(
        &Value::exact(part.max(1) as u64),
        &Value::exact(clique_size.max(1) as u64),
    );
    let arms = tripod_arms.max(ltripod_arms).max(1);
    if *threshold.bound() >= num_bigint::BigUint::from(arms) {
        threshold
    } else {
        Value::exact(arms)
    }
}

/// The i-th member of a growing-tree-width family avoiding the other three
/// criteria: complete graphs, complete bipartite graphs, 1-subdivisions of
/// complete graphs, and their line graphs.
pub fn unboundedness_family(criterion: Criterion, i: usize) -> Result<Graph, DichotomyError> {
    if i < 1 {
        return Err(DichotomyError::BadFamilyIndex);
    }
    let g = match criterion {
        Criterion::Complete => generate(&GeneratorSpec::Complete(i + 2)),
        Criterion::CompleteBipartite => generate(&GeneratorSpec::CompleteBipartite(i + 2, i + 2)),
        Criterion::Tripod => generate(&GeneratorSpec::SubdividedComplete(i + 2, 1)),
        Criterion::LineOfTripod => {
            return Ok(line_graph(
                &generate(&GeneratorSpec::SubdividedComplete(i + 2, 1)).expect("valid spec"),
            ))
        }
    };
    Ok(g.expect("valid spec"))
}

/// Aggregated tree-width statistics for one sample size.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub samples: usize,
    /// F-free draws whose tree-width was solved exactly.
    pub accepted: usize,
    /// Draws rejected because a member of F embeds.
    pub rejected: usize,
    /// Draws dropped because a search or solve ran out of budget; these are
    /// never mixed into the statistics.
    pub budget_exceeded: usize,
    pub tw_min: Option<i64>,
    /// Lower median of the accepted widths.
    pub tw_med: Option<i64>,
    pub tw_max: Option<i64>,
}

/// Samples G(n, edge_probability) graphs for each n, keeps the F-free ones,
/// and solves their tree-width exactly. Fully reproducible: sample i at
/// size n uses the PRNG seed `splitmix64(seed XOR (n * 2^32 + i))`.
pub fn survey(
    forbidden: &ForbiddenSet,
    n_range: std::ops::RangeInclusive<usize>,
    samples: usize,
    seed: u64,
    edge_probability: f64,
    budget: u64,
) -> Vec<SurveyRow> {
    let members = forbidden.graphs();
    let mut rows = Vec::new();
    for n in n_range {
        let mut widths: Vec<i64> = Vec::new();
        let mut rejected = 0;
        let mut exceeded = 0;
        for i in 0..samples {
            let sample_seed = splitmix64(seed ^ ((n as u64) << 32 | i as u64));
            let g = random_graph(n, edge_probability, sample_seed).expect("within caps");
            match is_f_free(&g, &members, budget) {
                Freeness::NotFree { .. } => {
                    rejected += 1;
                    continue;
                }
                Freeness::BudgetExceeded { .. } => {
                    exceeded += 1;
                    continue;
                }
                Freeness::Free => {}
            }
            match exact_treewidth(&g, budget).expect("survey sizes are within caps") {
                TreewidthOutcome::Exact { width, .. } => widths.push(width),
                TreewidthOutcome::BudgetExceeded { .. } => exceeded += 1,
            }
        }
        widths.sort_unstable();
        rows.push(SurveyRow {
            n,
            samples,
            accepted: widths.len(),
            rejected,
            budget_exceeded: exceeded,
            tw_min: widths.first().copied(),
            tw_med: (!widths.is_empty()).then(|| widths[(widths.len() - 1) / 2]),
            tw_max: widths.last().copied(),
        });
    }
    rows
}

/// CSV rendering with the stable column set.
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from("n,samples,accepted,tw_min,tw_med,tw_max,budget_exceeded\n");
    let cell = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.n,
            row.samples,
            row.accepted,
            cell(row.tw_min),
            cell(row.tw_med),
            cell(row.tw_max),
            row.budget_exceeded
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_set_is_bounded() {
        let f = ForbiddenSet::from_specs(&["complete:4", "bipartite:3,3", "tripod:1,1,1", "linetripod:1,1,1"])
            .unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(verdict.bounded);
        assert_eq!(verdict.complete.as_deref(), Some("complete:4"));
        assert_eq!(verdict.complete_bipartite.as_deref(), Some("bipartite:3,3"));
        assert_eq!(verdict.tripod.as_deref(), Some("tripod:1,1,1"));
        assert_eq!(verdict.line_of_tripod.as_deref(), Some("linetripod:1,1,1"));
        assert!(verdict.suggested_p.is_some());
    }

    #[test]
    fn dropping_the_line_tripod_member_loses_exactly_that_slot() {
        let f = ForbiddenSet::from_specs(&["complete:4", "bipartite:3,3", "tripod:1,1,1"]).unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(!verdict.bounded);
        assert_eq!(verdict.missing, vec!["line_of_tripod"]);
    }

    #[test]
    fn claw_fills_both_tripod_and_bipartite() {
        // The claw S_{1,1,1} is K_{1,3}, so it witnesses two criteria at once.
        let f = ForbiddenSet::from_specs(&["complete:4", "tripod:1,1,1", "linetripod:1,1,1"]).unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(verdict.bounded);
        assert_eq!(verdict.complete_bipartite.as_deref(), Some("tripod:1,1,1"));
    }

    #[test]
    fn p5_fills_both_boundary_slots() {
        let f = ForbiddenSet::from_specs(&["path:5", "complete:3", "bipartite:2,2"]).unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(verdict.bounded);
        assert_eq!(verdict.tripod.as_deref(), Some("path:5"));
        assert_eq!(verdict.line_of_tripod.as_deref(), Some("path:5"));
    }

    #[test]
    fn k2_alone_is_bounded() {
        let f = ForbiddenSet::from_specs(&["complete:2"]).unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(verdict.bounded, "K_2-free graphs are edgeless");
    }

    #[test]
    fn k3_alone_misses_two_criteria() {
        // K_3 is complete and also the arm-less T shape.
        let f = ForbiddenSet::from_specs(&["complete:3"]).unwrap();
        let verdict = decide_bounded(&f, false);
        assert!(!verdict.bounded);
        assert_eq!(verdict.missing, vec!["complete_bipartite", "tripod"]);
    }

    #[test]
    fn verdict_is_order_independent() {
        let specs = ["complete:4", "bipartite:3,3", "tripod:2,2,2"];
        let forward = decide_bounded(&ForbiddenSet::from_specs(&specs).unwrap(), false);
        let reversed: Vec<&str> = specs.iter().rev().copied().collect();
        let backward = decide_bounded(&ForbiddenSet::from_specs(&reversed).unwrap(), false);
        assert_eq!(forward.bounded, backward.bounded);
        assert_eq!(forward.missing, backward.missing);
    }

    #[test]
    fn lenient_bipartite_flag() {
        let edgeless = Graph::empty(3).unwrap();
        let f = ForbiddenSet::new(vec![
            ("edgeless3".into(), edgeless),
            ("k4".into(), generate(&GeneratorSpec::Complete(4)).unwrap()),
        ])
        .unwrap();
        let strict = decide_bounded(&f, false);
        assert!(strict.missing.contains(&"complete_bipartite"));
        let lenient = decide_bounded(&f, true);
        assert!(!lenient.missing.contains(&"complete_bipartite"));
        assert!(!lenient.notes.is_empty());
    }

    #[test]
    fn empty_forbidden_set_is_rejected() {
        assert_eq!(
            ForbiddenSet::new(vec![]).unwrap_err(),
            DichotomyError::EmptyForbiddenSet
        );
        let null = Graph::empty(0).unwrap();
        assert!(matches!(
            ForbiddenSet::new(vec![("null".into(), null)]),
            Err(DichotomyError::NullMember(_))
        ));
    }

    #[test]
    fn family_members() {
        assert_eq!(
            unboundedness_family(Criterion::Complete, 2).unwrap(),
            generate(&GeneratorSpec::Complete(4)).unwrap()
        );
        let t1 = unboundedness_family(Criterion::Tripod, 2).unwrap();
        assert_eq!(t1.n(), 10); // 1-subdivision of K_4
        let l1 = unboundedness_family(Criterion::LineOfTripod, 1).unwrap();
        // line graph of C_6 is C_6 again
        assert!(crate::detection::is_isomorphic(&l1, &generate(&GeneratorSpec::Cycle(6)).unwrap()).unwrap());
        assert!(unboundedness_family(Criterion::Complete, 0).is_err());
    }

    #[test]
    fn survey_is_reproducible_and_handles_zero_samples() {
        let f = ForbiddenSet::from_specs(&["complete:3"]).unwrap();
        let a = survey(&f, 4..=6, 20, 11, 0.3, 1 << 22);
        let b = survey(&f, 4..=6, 20, 11, 0.3, 1 << 22);
        assert_eq!(a, b);
        assert!(a.iter().all(|row| row.accepted + row.rejected + row.budget_exceeded == 20));

        let empty = survey(&f, 3..=3, 0, 1, 0.5, 1 << 20);
        assert_eq!(empty[0].accepted, 0);
        assert_eq!(empty[0].tw_med, None);
        let csv = survey_csv(&empty);
        assert!(csv.starts_with("n,samples,"));
        assert!(csv.lines().nth(1).unwrap().starts_with("3,0,0,,,,"));
    }
}
