//! Plugging of graph patterns and the equational meta-logic: trivial, refl,
//! sym, subst and plug.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bangbox::GraphPattern;
use crate::compose::{plug, PlugMaps, PlugSpec};
use crate::error::{Error, Result};
use crate::graph::fresh_id;
use crate::label::VertexLabel;
use crate::rewrite::{prepare_rule, rewrite_matches, rewrite_unchecked};
use crate::rule::{check_rule, LabelTheory, Rule, Theory};

/// Plugs two patterns. An identified vertex inside a box forces its whole
/// box to be identified with a single box of the other side; such boxes
/// unify under the left name.
pub fn pattern_plug<L: Clone>(
    spec: &PlugSpec<L>,
    g: &GraphPattern<L>,
    h: &GraphPattern<L>,
) -> Result<(GraphPattern<L>, PlugMaps)> {
    let pairs: Vec<(&String, &String)> = spec
        .interface
        .graph()
        .vertex_ids()
        .map(|x| (&spec.left.vertex_map[x], &spec.right.vertex_map[x]))
        .collect();
    let l2r: BTreeMap<&String, &String> = pairs.iter().copied().collect();
    let r2l: BTreeMap<&String, &String> = pairs.iter().map(|(a, b)| (*b, *a)).collect();
    let mut unified: BTreeMap<String, String> = BTreeMap::new(); // right box -> left box
    for (b, members) in g.boxes() {
        let ident: Vec<&String> = members.iter().filter(|v| l2r.contains_key(v)).collect();
        if ident.is_empty() {
            continue;
        }
        let partner = box_partner(members, &l2r, h)
            .ok_or_else(|| Error::PatternPlugBox(format!("left box {b} is not identified with one right box")))?;
        if unified.insert(partner.clone(), b.clone()).is_some() {
            return Err(Error::PatternPlugBox(format!("right box {partner} identified twice")));
        }
    }
    for (b, members) in h.boxes() {
        let ident = members.iter().any(|v| r2l.contains_key(v));
        if ident {
            let partner = box_partner(members, &r2l, g);
            if partner.as_ref() != unified.get(b) {
                return Err(Error::PatternPlugBox(format!(
                    "right box {b} is not identified with one left box"
                )));
            }
        }
    }
    for (l, r) in &pairs {
        if g.box_of(l).is_none() != h.box_of(r).is_none() {
            return Err(Error::PatternPlugBox(format!(
                "{l} and {r} disagree on box membership"
            )));
        }
    }

    let (egraph, maps) = plug(spec, g.egraph(), h.egraph())?;
    let mut boxes = g.boxes().clone();
    for (b, members) in h.boxes() {
        let mapped: BTreeSet<String> = members.iter().map(|v| maps.right.vertex_map[v].clone()).collect();
        match unified.get(b) {
            Some(left) => {
                boxes.get_mut(left).unwrap().extend(mapped);
            }
            None => {
                let name = fresh_id(b, |c| boxes.contains_key(c));
                boxes.insert(name, mapped);
            }
        }
    }
    Ok((GraphPattern::new(egraph, boxes)?, maps))
}

/// The single box of `other` that every member of a box is identified into,
/// provided the whole box is identified and covers that box exactly.
fn box_partner<L>(
    members: &BTreeSet<String>,
    across: &BTreeMap<&String, &String>,
    other: &GraphPattern<L>,
) -> Option<String> {
    let images: Option<BTreeSet<&String>> = members.iter().map(|v| across.get(v).copied()).collect();
    let images = images?;
    let boxes: BTreeSet<Option<&str>> = images.iter().map(|w| other.box_of(w)).collect();
    let [Some(b)] = boxes.into_iter().collect::<Vec<_>>()[..] else {
        return None;
    };
    let target: BTreeSet<&String> = other.boxes()[b].iter().collect();
    (target == images).then(|| b.to_string())
}

/// Plugs two rules side by side along pairs of exterior names. The right
/// rule's exterior names are first renamed apart from everything in the
/// left rule, using the same renaming on both of its sides.
pub fn plug_rules<L: VertexLabel>(
    left: &Rule<L>,
    right: &Rule<L>,
    pairs: &[(String, String)],
) -> Result<Rule<L>> {
    let taken: BTreeSet<String> = left
        .lhs
        .graph()
        .vertex_ids()
        .chain(left.rhs.graph().vertex_ids())
        .cloned()
        .collect();
    let mut used = taken.clone();
    used.extend(right.lhs.graph().vertex_ids().cloned());
    used.extend(right.rhs.graph().vertex_ids().cloned());
    let mut rename = BTreeMap::new();
    for x in right.exterior_names() {
        if taken.contains(x) {
            let id = fresh_id(&format!("{x}'"), |c| used.contains(c));
            used.insert(id.clone());
            rename.insert(x.clone(), id);
        }
    }
    // Interior ids clashing with the left side's exterior names would be
    // freshened differently on each side; move them out of the way too.
    let left_ext = left.exterior_names().clone();
    let side = |p: &GraphPattern<L>, used: &mut BTreeSet<String>| -> Result<GraphPattern<L>> {
        let mut vmap = rename.clone();
        for v in p.egraph().interior() {
            if left_ext.contains(v) || rename.values().any(|r| r == v) {
                let id = fresh_id(&format!("{v}'"), |c| used.contains(c));
                used.insert(id.clone());
                vmap.insert(v.clone(), id);
            }
        }
        p.renamed(&vmap, &BTreeMap::new(), &BTreeMap::new())
    };
    let r_lhs = side(&right.lhs, &mut used)?;
    let r_rhs = side(&right.rhs, &mut used)?;
    let pairs: Vec<(String, String)> = pairs
        .iter()
        .map(|(a, b)| (a.clone(), rename.get(b).cloned().unwrap_or_else(|| b.clone())))
        .collect();
    for (a, b) in &pairs {
        if !left.exterior_names().contains(a) || !r_lhs.egraph().is_exterior(b) {
            return Err(Error::Derivation(format!(
                "plug pair ({a}, {b}) must join exterior names"
            )));
        }
    }
    let lspec = PlugSpec::joining(left.lhs.egraph(), r_lhs.egraph(), &pairs)?;
    let rspec = PlugSpec::joining(left.rhs.egraph(), r_rhs.egraph(), &pairs)?;
    let (lhs, lmaps) = pattern_plug(&lspec, &left.lhs, &r_lhs)?;
    let (rhs, rmaps) = pattern_plug(&rspec, &left.rhs, &r_rhs)?;
    if lhs.egraph().exterior() != rhs.egraph().exterior() {
        return Err(Error::Derivation("plugged sides disagree on exterior names".into()));
    }
    // Box names: left boxes keep theirs; right boxes may have been renamed
    // independently on each side, so relate them through their members.
    let mut box_map = left.box_map.clone();
    let right_box_name = |p: &GraphPattern<L>, maps: &PlugMaps, orig: &GraphPattern<L>, b: &str| -> Option<String> {
        let probe = orig.boxes()[b].iter().next()?;
        p.box_of(&maps.right.vertex_map[probe]).map(str::to_string)
    };
    for (a, b) in &right.box_map {
        if let (Some(x), Some(y)) = (
            right_box_name(&lhs, &lmaps, &r_lhs, a),
            right_box_name(&rhs, &rmaps, &r_rhs, b),
        ) {
            box_map.entry(x).or_insert(y);
        }
    }
    let rule = Rule::new(format!("{}+{}", left.name, right.name), lhs, rhs, box_map);
    check_rule(&rule)?;
    Ok(rule)
}

/// The meta-rule a derivation step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaRule {
    Trivial,
    Refl,
    Sym,
    Subst,
    Plug,
}

/// Data a step needs beyond its premises to be replayed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StepArgs {
    None,
    /// An axiom or lemma of the theory.
    Axiom { name: String },
    /// Rewrite the right side of premise 0 with premise 1 at the given
    /// index of the deterministic match enumeration.
    Subst { index: usize },
    /// Exterior pairs joining premise 0 (left) to premise 1 (right).
    Plug { pairs: Vec<(String, String)> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<L> {
    pub tag: MetaRule,
    pub premises: Vec<usize>,
    pub args: StepArgs,
    pub conclusion: Rule<L>,
}

/// A sequence of steps, each justified by earlier ones.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<L> {
    pub steps: Vec<Step<L>>,
}

impl<L> Default for Derivation<L> {
    fn default() -> Self {
        Derivation { steps: Vec::new() }
    }
}

impl<L: VertexLabel> Derivation<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn conclusion(&self, i: usize) -> Result<&Rule<L>> {
        self.steps
            .get(i)
            .map(|s| &s.conclusion)
            .ok_or_else(|| Error::Derivation(format!("no step {i}")))
    }

    fn push(&mut self, tag: MetaRule, premises: Vec<usize>, args: StepArgs, conclusion: Rule<L>) -> Result<usize> {
        check_rule(&conclusion)?;
        self.steps.push(Step {
            tag,
            premises,
            args,
            conclusion,
        });
        Ok(self.steps.len() - 1)
    }

    /// `Γ ⊢ A = B` for an axiom (or trusted lemma) of the theory.
    pub fn trivial<T: LabelTheory<Label = L>>(&mut self, theory: &Theory<T>, name: &str) -> Result<usize> {
        let r = theory
            .rule(name)
            .ok_or_else(|| Error::Derivation(format!("unknown axiom {name}")))?
            .clone();
        self.push(MetaRule::Trivial, vec![], StepArgs::Axiom { name: name.into() }, r)
    }

    /// `A = A`.
    pub fn refl(&mut self, name: &str, a: GraphPattern<L>) -> Result<usize> {
        let box_map = a.boxes().keys().map(|b| (b.clone(), b.clone())).collect();
        let r = Rule::new(name, a.clone(), a, box_map);
        self.push(MetaRule::Refl, vec![], StepArgs::None, r)
    }

    pub fn sym(&mut self, i: usize) -> Result<usize> {
        let r = self.conclusion(i)?.sym();
        self.push(MetaRule::Sym, vec![i], StepArgs::None, r)
    }

    /// From `C = D` (step `ctx`) and `A = B` (step `rule`), concludes
    /// `(C = D[B/A])θ` using match `index` of `A` in `D`.
    pub fn subst<T: LabelTheory<Label = L>>(
        &mut self,
        model: &T,
        ctx: usize,
        rule: usize,
        index: usize,
    ) -> Result<usize> {
        let r = subst_conclusion(model, self.conclusion(ctx)?, self.conclusion(rule)?, index)?;
        self.push(MetaRule::Subst, vec![ctx, rule], StepArgs::Subst { index }, r)
    }

    /// `π(A, C) = π(B, D)`.
    pub fn plug(&mut self, left: usize, right: usize, pairs: Vec<(String, String)>) -> Result<usize> {
        let r = plug_rules(self.conclusion(left)?, self.conclusion(right)?, &pairs)?;
        self.push(MetaRule::Plug, vec![left, right], StepArgs::Plug { pairs }, r)
    }

    /// Replays every step and compares conclusions.
    pub fn check<T: LabelTheory<Label = L>>(&self, theory: &Theory<T>) -> Result<()> {
        let mut replay = Derivation::new();
        for (i, s) in self.steps.iter().enumerate() {
            if s.premises.iter().any(|&p| p >= i) {
                return Err(Error::Derivation(format!("step {i} cites a later step")));
            }
            let prem = |k: usize| -> Result<usize> {
                s.premises
                    .get(k)
                    .copied()
                    .ok_or_else(|| Error::Derivation(format!("step {i} lacks premise {k}")))
            };
            let j = match (&s.tag, &s.args) {
                (MetaRule::Trivial, StepArgs::Axiom { name }) => replay.trivial(theory, name)?,
                (MetaRule::Refl, _) => replay.refl(&s.conclusion.name, s.conclusion.lhs.clone())?,
                (MetaRule::Sym, _) => replay.sym(prem(0)?)?,
                (MetaRule::Subst, StepArgs::Subst { index }) => {
                    replay.subst(&theory.model, prem(0)?, prem(1)?, *index)?
                }
                (MetaRule::Plug, StepArgs::Plug { pairs }) => {
                    replay.plug(prem(0)?, prem(1)?, pairs.clone())?
                }
                _ => return Err(Error::Derivation(format!("step {i}: arguments do not fit"))),
            };
            let (a, b) = (&replay.steps[j].conclusion, &s.conclusion);
            if a.lhs != b.lhs || a.rhs != b.rhs || a.box_map != b.box_map {
                return Err(Error::Derivation(format!("step {i} does not follow")));
            }
        }
        Ok(())
    }
}

fn subst_conclusion<T: LabelTheory>(
    model: &T,
    ctx: &Rule<T::Label>,
    rule: &Rule<T::Label>,
    index: usize,
) -> Result<Rule<T::Label>> {
    let avoid = ctx.variables();
    let rule = rule.rename_variables_apart(&avoid);
    let rule = prepare_rule::<T>(&rule, &ctx.rhs);
    let matches = rewrite_matches(model, &rule, &ctx.rhs);
    let m = matches
        .get(index)
        .ok_or_else(|| Error::Derivation(format!("{} has no match {index}", rule.name)))?;
    let rhs = rewrite_unchecked(model, &rule, &ctx.rhs, m)?;
    let theta = &m.ematch.state;
    let inst = |p: &GraphPattern<T::Label>| -> Result<GraphPattern<T::Label>> {
        let mut err = None;
        let out = p.map_labels(|_, l| match model.apply_subst(l, theta) {
            Ok(x) => x,
            Err(e) => {
                err = Some(e);
                l.clone()
            }
        });
        err.map_or(Ok(out), Err)
    };
    Ok(Rule::new(
        format!("{}/{}", ctx.name, rule.name),
        inst(&ctx.lhs)?,
        inst(&rhs)?,
        ctx.box_map.clone(),
    ))
}
