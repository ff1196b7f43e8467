//! Catalog of the skewness regressions.
//!
//! Models on local cases put contemporaneous fear sentiment on the right-hand side;
//! the robustness models on deaths, global cases and global deaths use sentiment
//! lagged one day and the growth rate lagged one day. Every model with a
//! sentiment term has a `_1` twin that swaps `fearSent` for the dummy `D_fear`,
//! in both the level and the interaction. A contemporaneous growth rate is
//! expressible as `Term::new(growth, 0)` for callers who want that timing.

use super::{ModelSpec, Term};

pub const SKEW: &str = "skew";
pub const FEAR: &str = "fearSent";
pub const FEAR_DUMMY: &str = "D_fear";

/// Panel column labels the catalog refers to.
pub const COLUMN_LABELS: [&str; 7] = [SKEW, "rCases", "rDeaths", "rGlobalCases", "rGlobalDeaths", FEAR, FEAR_DUMMY];

fn spec(terms: Vec<Term>) -> ModelSpec {
    ModelSpec::new(SKEW, terms)
}

/// Base regression, sentiment alone, sentiment added, and the interaction model,
/// for one growth variable and one sentiment timing.
fn family(growth: &str, growth_lag: usize, fear_lag: usize, fear: &str) -> [ModelSpec; 4] {
    let ar = || Term::new(SKEW, 1);
    let g = || Term::new(growth, growth_lag);
    let f = || Term::new(fear, fear_lag);
    [
        spec(vec![ar(), g()]),
        spec(vec![ar(), f()]),
        spec(vec![ar(), g(), f()]),
        spec(vec![ar(), g(), f(), Term::interaction(growth, growth_lag, fear, fear_lag)]),
    ]
}

/// Every model in reporting order, keyed by label.
pub fn model_catalog() -> Vec<(&'static str, ModelSpec)> {
    let [eq2, eq3, eq4, eq5] = family("rCases", 1, 0, FEAR);
    let [_, eq3_1, eq4_1, eq5_1] = family("rCases", 1, 0, FEAR_DUMMY);
    let mut eq2_lag2 = eq2.clone();
    eq2_lag2.terms.push(Term::new("rCases", 2));
    let mut eq2_lag3 = eq2_lag2.clone();
    eq2_lag3.terms.push(Term::new("rCases", 3));

    let mut out = vec![
        ("eq2", eq2),
        ("eq2_lag2", eq2_lag2),
        ("eq2_lag3", eq2_lag3),
        ("eq3", eq3),
        ("eq4", eq4),
        ("eq3_1", eq3_1),
        ("eq4_1", eq4_1),
        ("eq5", eq5),
        ("eq5_1", eq5_1),
    ];
    let robustness: [(&str, [&'static str; 5]); 3] = [
        ("rDeaths", ["eq8", "eq9", "eq9_1", "eq10", "eq10_1"]),
        ("rGlobalCases", ["eq11", "eq12", "eq12_1", "eq13", "eq13_1"]),
        ("rGlobalDeaths", ["eq14", "eq15", "eq15_1", "eq16", "eq16_1"]),
    ];
    for (growth, [base, added, added_d, inter, inter_d]) in robustness {
        let [b, _, a, i] = family(growth, 1, 1, FEAR);
        let [_, _, ad, id] = family(growth, 1, 1, FEAR_DUMMY);
        out.extend([(base, b), (added, a), (added_d, ad), (inter, i), (inter_d, id)]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(label: &str) -> ModelSpec {
        model_catalog().into_iter().find(|(l, _)| *l == label).unwrap().1
    }

    #[test]
    fn interaction_model_terms() {
        let m = get("eq5");
        assert_eq!(m.dependent, "skew");
        assert!(m.intercept);
        let labels: Vec<String> = m.terms.iter().map(Term::label).collect();
        assert_eq!(labels, ["skew_lag1", "rCases_lag1", "fearSent", "rCases_lag1:fearSent"]);
    }

    #[test]
    fn base_model_terms() {
        let labels: Vec<String> = get("eq2").terms.iter().map(Term::label).collect();
        assert_eq!(labels, ["skew_lag1", "rCases_lag1"]);
    }

    #[test]
    fn catalog_is_complete_and_unique() {
        let all = model_catalog();
        assert_eq!(all.len(), 24);
        let mut labels: Vec<&str> = all.iter().map(|(l, _)| *l).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), 24);
        for (_, m) in &all {
            m.validate().unwrap();
            for t in &m.terms {
                assert!(COLUMN_LABELS.contains(&t.variable.as_str()));
            }
        }
        // Dummy twins carry no continuous sentiment.
        for (l, m) in &all {
            if l.ends_with("_1") {
                assert!(m.terms.iter().all(|t| t.variable != FEAR && t.interact_with.as_ref().is_none_or(|(b, _)| b != FEAR)));
            }
        }
    }

    #[test]
    fn robustness_timing() {
        let labels: Vec<String> = get("eq10_1").terms.iter().map(Term::label).collect();
        assert_eq!(labels, ["skew_lag1", "rDeaths_lag1", "D_fear_lag1", "rDeaths_lag1:D_fear_lag1"]);
    }
}
