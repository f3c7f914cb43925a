use std::collections::BTreeMap;
use std::fmt::Write;

use super::gate::{kind_counts, Circuit, GateKind};
use crate::encoding::TermClass;
use crate::error::{Error, Result};
use crate::models::counts::{gate_shape_of, gate_shape_poly, GATE_SHAPES};
use crate::models::Variant;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassResources {
    /// Number of term segments of this class.
    pub terms: usize,
    pub gates: BTreeMap<GateKind, usize>,
}

/// Exact gate counts of a circuit, in total and per term class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceReport {
    pub n_qubits: usize,
    pub total: usize,
    pub by_kind: BTreeMap<GateKind, usize>,
    pub by_class: BTreeMap<TermClass, ClassResources>,
    /// Gates outside every term segment (frame changes).
    pub unassigned: usize,
}

/// Cost of one compiled term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermCost {
    pub class: TermClass,
    pub gates: usize,
    pub entanglers: usize,
    pub ms: usize,
    pub swaps: usize,
    pub single: usize,
}

/// One gate-shape row compared with its closed-form prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeComparison {
    pub shape: &'static str,
    pub count: usize,
    pub prediction: i128,
}

impl ShapeComparison {
    pub fn matches(&self) -> bool {
        self.count as i128 == self.prediction
    }
}

pub fn resource_report(c: &Circuit) -> ResourceReport {
    let mut by_class: BTreeMap<TermClass, ClassResources> = BTreeMap::new();
    let mut assigned = 0;
    for seg in c.segments() {
        let entry = by_class.entry(seg.class).or_insert_with(|| ClassResources {
            terms: 0,
            gates: GateKind::ALL.iter().map(|&k| (k, 0)).collect(),
        });
        entry.terms += 1;
        for (k, v) in kind_counts(c.segment_gates(seg)) {
            *entry.gates.entry(k).or_insert(0) += v;
        }
        assigned += seg.len;
    }
    ResourceReport {
        n_qubits: c.n_qubits,
        total: c.len(),
        by_kind: c.kind_counts(),
        by_class,
        unassigned: c.len() - assigned,
    }
}

/// Per-segment costs in circuit order.
pub fn term_costs(c: &Circuit) -> Vec<TermCost> {
    c.segments()
        .iter()
        .map(|seg| {
            let k = kind_counts(c.segment_gates(seg));
            TermCost {
                class: seg.class,
                gates: seg.len,
                entanglers: k[&GateKind::PairEntangler],
                ms: k[&GateKind::Ms],
                swaps: k[&GateKind::Swap],
                single: k[&GateKind::SingleRotation],
            }
        })
        .collect()
}

impl ResourceReport {
    /// Term counts per gate shape for one product-formula step, next to the
    /// closed forms at `n` sites. `repetitions` is the number of times each
    /// term occurs in the circuit.
    pub fn compare_shapes(&self, variant: Variant, n: usize, repetitions: usize) -> Result<Vec<ShapeComparison>> {
        if repetitions == 0 {
            return Err(Error::InvalidCircuit("repetitions must be positive".into()));
        }
        let mut shapes = [0usize; GATE_SHAPES.len()];
        for (class, r) in &self.by_class {
            let Some(row) = gate_shape_of(*class) else { continue };
            if r.terms % repetitions != 0 {
                return Err(Error::InvalidCircuit(format!(
                    "{} segments of class {class} do not split into {repetitions} repetitions",
                    r.terms
                )));
            }
            shapes[row] += r.terms / repetitions;
        }
        Ok(GATE_SHAPES
            .iter()
            .enumerate()
            .map(|(row, &shape)| ShapeComparison {
                shape,
                count: shapes[row],
                prediction: gate_shape_poly(variant, row).eval(n as u64),
            })
            .collect())
    }
}

pub const SHAPE_CSV_HEADER: &str = "class,count,polynomial_prediction,match";

pub fn shape_csv(rows: &[ShapeComparison]) -> String {
    let mut s = format!("{SHAPE_CSV_HEADER}\n");
    for r in rows {
        writeln!(s, "{},{},{},{}", r.shape, r.count, r.prediction, r.matches()).expect("String write");
    }
    s
}
