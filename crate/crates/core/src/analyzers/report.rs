use std::fmt::Write as _;

use serde::Serialize;

use super::{
    build_cotree, compute_nice_tree_decomposition, find_modulator, neighbourhood_diversity, vertex_integrity, Family,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper limits for the searched parameters; values above them are reported
/// as exceeded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub vc: usize,
    pub pvc3: usize,
    pub pvc4: usize,
    pub dclique: usize,
    pub dcluster: usize,
    pub nd: usize,
    pub vi: usize,
    pub tw: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { vc: 8, pvc3: 8, pvc4: 8, dclique: 8, dcluster: 8, nd: 32, vi: 6, tw: 6 }
    }
}

impl Budgets {
    /// Applies one `NAME=K` override.
    pub fn set(&mut self, spec: &str) -> Result<()> {
        let (name, value) =
            spec.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("budget {spec:?} is not NAME=K")))?;
        let value: usize =
            value.parse().map_err(|_| Error::InvalidArgument(format!("budget value {value:?} is not a number")))?;
        let slot = match name {
            "vc" => &mut self.vc,
            "pvc3" => &mut self.pvc3,
            "pvc4" => &mut self.pvc4,
            "dclique" => &mut self.dclique,
            "dcluster" => &mut self.dcluster,
            "nd" => &mut self.nd,
            "vi" => &mut self.vi,
            "tw" => &mut self.tw,
            _ => return Err(Error::InvalidArgument(format!("unknown parameter {name:?}"))),
        };
        *slot = value;
        Ok(())
    }
}

/// `None` means the parameter exceeds its budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterReport {
    pub vc: Option<usize>,
    pub pvc3: Option<usize>,
    pub pvc4: Option<usize>,
    pub dclique: Option<usize>,
    pub dcluster: Option<usize>,
    pub nd: Option<usize>,
    pub vi: Option<usize>,
    pub tw: Option<usize>,
    pub fes: usize,
    pub cograph: bool,
    /// Deleting a 4-path cover leaves paths of at most three vertices.
    pub td_bound: Option<usize>,
}

pub fn parameter_report(graph: &Graph, budgets: &Budgets) -> ParameterReport {
    let modulator = |family, budget| find_modulator(graph, family, budget).map(|r| r.size);
    let pvc4 = modulator(Family::PathCover(4), budgets.pvc4);
    let nd = neighbourhood_diversity(graph).diversity();
    ParameterReport {
        vc: modulator(Family::VertexCover, budgets.vc),
        pvc3: modulator(Family::PathCover(3), budgets.pvc3),
        pvc4,
        dclique: modulator(Family::ToClique, budgets.dclique),
        dcluster: modulator(Family::ToCluster, budgets.dcluster),
        nd: (nd <= budgets.nd).then_some(nd),
        vi: vertex_integrity(graph, budgets.vi).map(|(_, k)| k),
        tw: compute_nice_tree_decomposition(graph, budgets.tw).map(|td| td.width()),
        fes: (graph.edge_count() + 1).saturating_sub(graph.vertex_count()),
        cograph: build_cotree(graph).is_some(),
        td_bound: pvc4.map(|k| k + 3),
    }
}

impl ParameterReport {
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let value = |v: Option<usize>| v.map_or_else(|| "exceeded".to_string(), |v| v.to_string());
        vec![
            ("vc", value(self.vc)),
            ("pvc3", value(self.pvc3)),
            ("pvc4", value(self.pvc4)),
            ("dclique", value(self.dclique)),
            ("dcluster", value(self.dcluster)),
            ("nd", value(self.nd)),
            ("vi", value(self.vi)),
            ("tw", value(self.tw)),
            ("fes", self.fes.to_string()),
            ("cograph", if self.cograph { "yes" } else { "no" }.to_string()),
            ("td_bound", value(self.td_bound)),
        ]
    }

    /// One `param <name> <value|exceeded>` line per parameter.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in self.entries() {
            let _ = writeln!(out, "param {name} {value}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_report() {
        let report = parameter_report(&Graph::complete(6), &Budgets::default());
        assert_eq!(report.dclique, Some(0));
        assert_eq!(report.nd, Some(1));
        assert_eq!(report.fes, 10);
        assert!(report.cograph);
    }

    #[test]
    fn tree_and_cycle_report() {
        let tree = Graph::from_edges(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)]).unwrap();
        let report = parameter_report(&tree, &Budgets::default());
        assert_eq!((report.fes, report.tw), (0, Some(1)));
        assert_eq!(parameter_report(&Graph::cycle(5), &Budgets::default()).fes, 1);
    }

    #[test]
    fn exceeded_is_printed() {
        let mut budgets = Budgets::default();
        budgets.set("vc=1").unwrap();
        let text = parameter_report(&Graph::cycle(6), &budgets).to_text();
        assert!(text.contains("param vc exceeded\n"), "{text}");
        assert!(text.contains("param fes 1\n"));
        assert!(budgets.set("xx=1").is_err());
    }
}
