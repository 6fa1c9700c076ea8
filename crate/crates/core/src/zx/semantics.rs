//! Matrix semantics by tensor contraction. Z spiders are the standard-basis
//! spider tensors, X spiders the same in the Hadamard basis, `H` the 2×2
//! Hadamard; edge directions are ignored.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

use num_rational::Rational64;

use crate::bangbox::{copy_boxes, drop_boxes, instances};
use crate::label::VertexLabel;
use crate::rule::{LabelTheory, Rule};

use super::angle::{AngleExpr, AngleSubstitution};
use super::generators::Diagram;
use super::label::{NodeLabel, Zx};

pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    pub fn scaled(&self, k: Complex64) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                for c in 0..other.cols {
                    data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Matrix::new(self.rows, other.cols, data)
    }
}

/// A dense tensor over edge indices; `idx[0]` is the most significant bit.
#[derive(Clone, Debug)]
struct Tensor {
    idx: Vec<usize>,
    data: Vec<Complex64>,
}

fn bit(assign: usize, pos: usize, len: usize) -> usize {
    (assign >> (len - 1 - pos)) & 1
}

impl Tensor {
    fn scalar(x: Complex64) -> Self {
        Tensor {
            idx: vec![],
            data: vec![x],
        }
    }

    /// Builds a tensor from a function of the leg values. An index listed
    /// twice is a self-loop: both legs take the same value and it is summed
    /// out.
    fn from_legs(legs: &[usize], f: impl Fn(&[usize]) -> Complex64) -> Self {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for l in legs {
            *count.entry(*l).or_default() += 1;
        }
        let idx: Vec<usize> = count.iter().filter(|(_, c)| **c == 1).map(|(l, _)| *l).collect();
        let loops: Vec<usize> = count.iter().filter(|(_, c)| **c > 1).map(|(l, _)| *l).collect();
        let all: Vec<usize> = idx.iter().chain(&loops).copied().collect();
        let pos: Vec<usize> = legs.iter().map(|l| all.iter().position(|x| x == l).unwrap()).collect();
        let (n, m) = (idx.len(), all.len());
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << n];
        let mut vals = vec![0; legs.len()];
        for a in 0..(1usize << m) {
            for (k, p) in pos.iter().enumerate() {
                vals[k] = bit(a, *p, m);
            }
            data[a >> loops.len()] += f(&vals);
        }
        Tensor { idx, data }
    }

    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<usize> = self.idx.iter().filter(|i| other.idx.contains(i)).copied().collect();
        let a_only: Vec<usize> = self.idx.iter().filter(|i| !shared.contains(i)).copied().collect();
        let b_only: Vec<usize> = other.idx.iter().filter(|i| !shared.contains(i)).copied().collect();
        let res: Vec<usize> = a_only.iter().chain(&b_only).copied().collect();
        let (na, nb, ns) = (a_only.len(), b_only.len(), shared.len());
        let locate = |t: &Tensor, ids: &[usize]| -> Vec<usize> {
            ids.iter()
                .map(|i| t.idx.len() - 1 - t.idx.iter().position(|x| x == i).unwrap())
                .collect()
        };
        // bit shifts within each operand
        let sa_only = locate(self, &a_only);
        let sa_shared = locate(self, &shared);
        let sb_only = locate(other, &b_only);
        let sb_shared = locate(other, &shared);
        let spread = |bits: usize, n: usize, shifts: &[usize]| -> usize {
            (0..n).map(|k| bit(bits, k, n) << shifts[k]).sum()
        };
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << res.len()];
        for x in 0..(1usize << na) {
            let ax = spread(x, na, &sa_only);
            for y in 0..(1usize << nb) {
                let by = spread(y, nb, &sb_only);
                let mut acc = Complex64::new(0.0, 0.0);
                for s in 0..(1usize << ns) {
                    acc += self.data[ax + spread(s, ns, &sa_shared)]
                        * other.data[by + spread(s, ns, &sb_shared)];
                }
                data[(x << nb) | y] = acc;
            }
        }
        Tensor { idx: res, data }
    }
}

fn vertex_tensor(label: &NodeLabel, legs: &[usize], v: &str) -> Result<Tensor> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match label {
        NodeLabel::Z(a) | NodeLabel::X(a) => {
            let theta = a
                .radians()
                .ok_or_else(|| Error::Semantics(format!("{v} has a symbolic angle {a}")))?;
            let phase = Complex64::from_polar(1.0, theta);
            let z = matches!(label, NodeLabel::Z(_));
            let n = legs.len() as i32;
            Ok(Tensor::from_legs(legs, |vals| {
                if z {
                    if vals.iter().all(|&b| b == 0) {
                        Complex64::new(1.0, 0.0)
                    } else if vals.iter().all(|&b| b == 1) {
                        phase
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                } else {
                    let ones = vals.iter().filter(|&&b| b == 1).count();
                    let sign = if ones % 2 == 0 { 1.0 } else { -1.0 };
                    (Complex64::new(1.0, 0.0) + phase * sign) * s.powi(n)
                }
            }))
        }
        NodeLabel::H => {
            if legs.len() != 2 {
                return Err(Error::Semantics(format!("H vertex {v} has degree {}", legs.len())));
            }
            Ok(Tensor::from_legs(legs, |vals| {
                let sign = if vals[0] == 1 && vals[1] == 1 { -1.0 } else { 1.0 };
                Complex64::new(sign * s, 0.0)
            }))
        }
        NodeLabel::Wire => Err(Error::Semantics(format!("interior vertex {v} has no ZX label"))),
    }
}

/// Contracts every vertex not in `open`; the result is indexed by the
/// values on `open` (first = most significant). Each open vertex must have
/// degree 1.
pub fn contract(graph: &Graph<NodeLabel>, open: &[String], circles: usize) -> Result<Vec<Complex64>> {
    let edge_index: BTreeMap<&String, usize> = graph.edge_ids().enumerate().map(|(i, e)| (e, i)).collect();
    let open_set: BTreeSet<&String> = open.iter().collect();
    let mut tensors = Vec::new();
    for (v, label) in graph.vertices() {
        if open_set.contains(v) {
            continue;
        }
        let legs: Vec<usize> = graph
            .incident_ends(v)
            .iter()
            .map(|(e, _)| edge_index[e])
            .collect();
        tensors.push(vertex_tensor(label, &legs, v)?);
    }
    tensors.push(Tensor::scalar(Complex64::new(2f64.powi(circles as i32), 0.0)));
    let mut slot_edge = Vec::new();
    for b in open {
        let ends = graph.incident_ends(b);
        if ends.len() != 1 {
            return Err(Error::Semantics(format!("open vertex {b} has degree {}", ends.len())));
        }
        slot_edge.push(edge_index[&ends[0].0]);
    }

    while tensors.len() > 1 {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let (a, b) = (&tensors[i], &tensors[j]);
                let shared = a.idx.iter().filter(|x| b.idx.contains(x)).count();
                let size = a.idx.len() + b.idx.len() - 2 * shared;
                // prefer pairs that share an index
                let key = size + if shared == 0 { 64 } else { 0 };
                if best.is_none_or(|(_, _, k)| key < k) {
                    best = Some((i, j, key));
                }
            }
        }
        let (i, j, _) = best.unwrap();
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        tensors.push(a.contract(&b));
    }
    let t = tensors.pop().unwrap();
    let n = open.len();
    let mut out = Vec::with_capacity(1 << n);
    for a in 0..(1usize << n) {
        let mut value: BTreeMap<usize, usize> = BTreeMap::new();
        let mut consistent = true;
        for (k, e) in slot_edge.iter().enumerate() {
            let b = bit(a, k, n);
            if *value.entry(*e).or_insert(b) != b {
                consistent = false;
            }
        }
        if !consistent {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let m = t.idx.len();
        let pos: usize = t
            .idx
            .iter()
            .enumerate()
            .map(|(k, e)| value.get(e).copied().unwrap_or(0) << (m - 1 - k))
            .sum();
        out.push(t.data[pos]);
    }
    Ok(out)
}

/// The `2^|cod| × 2^|dom|` matrix of a concrete ZX diagram.
pub fn matrix_semantics(d: &Diagram) -> Result<Matrix> {
    let open: Vec<String> = d.cod.iter().chain(&d.dom).cloned().collect();
    let v = contract(&d.graph, &open, d.circles)?;
    Ok(Matrix::new(1 << d.cod.len(), 1 << d.dom.len(), v))
}

/// The state obtained by treating every exterior vertex as an output, in
/// name order. Exterior vertices must have degree 1.
pub fn pattern_semantics(g: &EGraph<NodeLabel>) -> Result<Matrix> {
    let open: Vec<String> = g.exterior().iter().cloned().collect();
    let v = contract(g.graph(), &open, 0)?;
    Ok(Matrix::new(1 << open.len(), 1, v))
}

/// Is there a nonzero `λ` with `a = λ·b`, up to [`TOLERANCE`] relative to
/// the largest entry?
pub fn equal_up_to_scalar(a: &Matrix, b: &Matrix) -> Result<bool> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::Semantics(format!(
            "shape {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let max = |m: &Matrix| m.data.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let (ma, mb) = (max(a), max(b));
    if ma < TOLERANCE || mb < TOLERANCE {
        return Ok(ma < TOLERANCE && mb < TOLERANCE);
    }
    let k = (0..b.data.len())
        .max_by(|&i, &j| b.data[i].norm().total_cmp(&b.data[j].norm()))
        .unwrap();
    let lambda = a.data[k] / b.data[k];
    if lambda.norm() < TOLERANCE {
        return Ok(false);
    }
    let worst = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - lambda * y).norm())
        .fold(0.0, f64::max);
    Ok(worst / ma <= TOLERANCE)
}

/// A failed soundness check: which instance disagreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub copies: BTreeMap<String, usize>,
    pub angles: BTreeMap<String, AngleExpr>,
}

/// Sample angle assignments: multiples of π with small denominators, spread
/// so distinct variables get distinct values.
pub fn sample_angles(vars: &BTreeSet<String>, trial: usize) -> AngleSubstitution {
    vars.iter()
        .enumerate()
        .map(|(n, v)| {
            let k = (trial * 7 + n * 5 + 1) as i64;
            (v.clone(), AngleExpr::constant(Rational64::new(k % 24, 12)))
        })
        .collect()
}

/// Compares both sides of `rule` on every instance with at most
/// `max_copies` copies per box, under `trials` angle assignments each.
pub fn check_rule_soundness(
    rule: &Rule<NodeLabel>,
    max_copies: usize,
    trials: usize,
) -> Result<Option<Counterexample>> {
    for (copies, lhs) in instances(&rule.lhs, max_copies) {
        let pushed: BTreeMap<String, usize> = copies
            .iter()
            .map(|(b, k)| (rule.box_map.get(b).cloned().unwrap_or_else(|| b.clone()), *k))
            .collect();
        let copied = copy_boxes(&pushed, &rule.rhs)?;
        let rhs = drop_boxes(&copied.boxes().keys().cloned().collect(), &copied)?;
        let mut vars = BTreeSet::new();
        for (_, l) in lhs.graph().vertices().chain(rhs.graph().vertices()) {
            vars.extend(l.variables());
        }
        for t in 0..trials.max(1) {
            let theta = sample_angles(&vars, t);
            let inst = |g: &EGraph<NodeLabel>| -> Result<Matrix> {
                let g = g.map_labels(|_, l| Zx.apply_subst(l, &theta).expect("substitution is total"));
                pattern_semantics(&g)
            };
            if !equal_up_to_scalar(&inst(&lhs)?, &inst(rhs.egraph())?)? {
                return Ok(Some(Counterexample {
                    copies,
                    angles: theta,
                }));
            }
            if vars.is_empty() {
                break;
            }
        }
    }
    Ok(None)
}
