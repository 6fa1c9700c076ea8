//! Rules between graph patterns, their validity conditions, and the
//! object-level hooks a theory supplies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::bangbox::GraphPattern;
use crate::concrete::ConcreteGraph;
use crate::egraph::EGraph;
use crate::error::{Error, Result};
use crate::graph::{fresh_id, Graph};
use crate::label::VertexLabel;
use crate::matcher::LabelMatcher;

/// Object-level behaviour: how labels match (producing a substitution) and
/// how a substitution instantiates a label.
pub trait LabelTheory {
    type Label: VertexLabel;
    type Subst: Clone + Debug + PartialEq;

    /// When false, edges match regardless of orientation.
    fn directed(&self) -> bool {
        true
    }

    fn empty_subst(&self) -> Self::Subst;

    fn match_label(
        &self,
        pattern: &Self::Label,
        target: &Self::Label,
        subst: &Self::Subst,
    ) -> Option<Self::Subst>;

    fn apply_subst(&self, label: &Self::Label, subst: &Self::Subst) -> Result<Self::Label>;
}

/// Labels compared by equality, edges directed, no variables.
#[derive(Clone, Copy, Debug, Default)]
pub struct Plain<L>(std::marker::PhantomData<L>);

impl<L> Plain<L> {
    pub fn new() -> Self {
        Plain(std::marker::PhantomData)
    }
}

impl<L: VertexLabel> LabelTheory for Plain<L> {
    type Label = L;
    type Subst = ();
    fn empty_subst(&self) {}
    fn match_label(&self, p: &L, t: &L, _: &()) -> Option<()> {
        (p == t).then_some(())
    }
    fn apply_subst(&self, l: &L, _: &()) -> Result<L> {
        Ok(l.clone())
    }
}

/// Adapts a theory to the matcher interface.
pub struct TheoryMatcher<'a, T>(pub &'a T);

impl<T: LabelTheory> LabelMatcher<T::Label> for TheoryMatcher<'_, T> {
    type State = T::Subst;
    fn initial(&self) -> T::Subst {
        self.0.empty_subst()
    }
    fn match_label(&self, p: &T::Label, t: &T::Label, s: &T::Subst) -> Option<T::Subst> {
        self.0.match_label(p, t, s)
    }
}

/// An equation between two graph patterns. Exterior vertices correspond by
/// id; `box_map` relates left boxes to right boxes.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<L> {
    pub name: String,
    pub lhs: GraphPattern<L>,
    pub rhs: GraphPattern<L>,
    pub box_map: BTreeMap<String, String>,
}

/// Validity condition labels reported by [`validate_rule`].
pub const EXTERIOR_ISO: &str = "exterior iso";
pub const BOX_MAP: &str = "box map";
pub const BOXED_EXTERIOR: &str = "boxed exterior coherence";

impl<L: VertexLabel> Rule<L> {
    pub fn new(
        name: impl Into<String>,
        lhs: GraphPattern<L>,
        rhs: GraphPattern<L>,
        box_map: BTreeMap<String, String>,
    ) -> Self {
        Rule {
            name: name.into(),
            lhs,
            rhs,
            box_map,
        }
    }

    /// Swaps the sides and inverts the box map.
    pub fn sym(&self) -> Self {
        Rule {
            name: self.name.clone(),
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            box_map: self.box_map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Rule {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn exterior_names(&self) -> &BTreeSet<String> {
        self.lhs.egraph().exterior()
    }

    /// Every variable mentioned on either side.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        for side in [&self.lhs, &self.rhs] {
            for (_, l) in side.graph().vertices() {
                vars.extend(l.variables());
            }
        }
        vars
    }

    /// Renames the rule's variables away from `avoid`.
    pub fn rename_variables_apart(&self, avoid: &BTreeSet<String>) -> Self {
        let ours = self.variables();
        let mut taken: BTreeSet<String> = avoid.union(&ours).cloned().collect();
        let mut map = BTreeMap::new();
        for v in ours.intersection(avoid) {
            let fresh = fresh_id(&format!("{v}'"), |c| taken.contains(c));
            taken.insert(fresh.clone());
            map.insert(v.clone(), fresh);
        }
        if map.is_empty() {
            return self.clone();
        }
        let f = |_: &str, l: &L| l.rename_variables(&map);
        Rule {
            name: self.name.clone(),
            lhs: self.lhs.map_labels(f),
            rhs: self.rhs.map_labels(f),
            box_map: self.box_map.clone(),
        }
    }
}

/// The three validity conditions. Returns one message per violation,
/// each starting with the condition's label.
pub fn validate_rule<L: VertexLabel>(r: &Rule<L>) -> Vec<String> {
    let mut out = Vec::new();
    let le = r.lhs.egraph().exterior();
    let re = r.rhs.egraph().exterior();
    if le != re {
        let missing_r: Vec<&String> = le.difference(re).collect();
        let missing_l: Vec<&String> = re.difference(le).collect();
        out.push(format!(
            "{EXTERIOR_ISO}: left-only {missing_r:?}, right-only {missing_l:?}"
        ));
    }
    let mut images = BTreeSet::new();
    for (a, b) in &r.box_map {
        if !r.lhs.boxes().contains_key(a) {
            out.push(format!("{BOX_MAP}: {a} is not a left box"));
        }
        if !r.rhs.boxes().contains_key(b) {
            out.push(format!("{BOX_MAP}: {b} is not a right box"));
        }
        if !images.insert(b) {
            out.push(format!("{BOX_MAP}: {b} is the image of two boxes"));
        }
    }
    for x in le.intersection(re) {
        let bl = r.lhs.box_of(x);
        let br = r.rhs.box_of(x);
        let ok = match (bl, br) {
            (None, None) => true,
            (Some(a), Some(b)) => r.box_map.get(a).map(String::as_str) == Some(b),
            _ => false,
        };
        if !ok {
            out.push(format!(
                "{BOXED_EXTERIOR}: {x} is in {bl:?} on the left but {br:?} on the right"
            ));
        }
    }
    out
}

pub fn check_rule<L: VertexLabel>(r: &Rule<L>) -> Result<()> {
    let v = validate_rule(r);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidRule(format!("{}: {}", r.name, v.join("; "))))
    }
}

/// Promotes the boundary of two concrete graphs of the same type to exterior
/// vertices named `i0, i1, …` (domain) and `o0, o1, …` (codomain).
pub fn lift_equation<L: VertexLabel>(
    name: &str,
    lhs: &ConcreteGraph<L>,
    rhs: &ConcreteGraph<L>,
) -> Result<Rule<L>> {
    if lhs.source_object() != rhs.source_object() || lhs.target_object() != rhs.target_object() {
        return Err(Error::InvalidRule(format!(
            "{name}: sides have different boundary types"
        )));
    }
    let rule = Rule {
        name: name.to_string(),
        lhs: GraphPattern::plain(lift_concrete(lhs)?),
        rhs: GraphPattern::plain(lift_concrete(rhs)?),
        box_map: BTreeMap::new(),
    };
    check_rule(&rule)?;
    Ok(rule)
}

/// The exterior name given to the `i`-th domain vertex by lifting.
pub fn input_name(i: usize) -> String {
    format!("i{i}")
}

/// The exterior name given to the `j`-th codomain vertex by lifting.
pub fn output_name(j: usize) -> String {
    format!("o{j}")
}

pub fn lift_concrete<L: VertexLabel>(c: &ConcreteGraph<L>) -> Result<EGraph<L>> {
    let mut names: BTreeMap<String, String> = BTreeMap::new();
    for (i, v) in c.dom.iter().enumerate() {
        names.insert(v.clone(), input_name(i));
    }
    for (j, v) in c.cod.iter().enumerate() {
        names.insert(v.clone(), output_name(j));
    }
    let reserved: BTreeSet<String> = names.values().cloned().collect();
    let mut taken = reserved.clone();
    taken.extend(c.graph.vertex_ids().cloned());
    for v in c.graph.vertex_ids() {
        if !names.contains_key(v) && reserved.contains(v) {
            let id = fresh_id(&format!("{v}'"), |x| taken.contains(x));
            taken.insert(id.clone());
            names.insert(v.clone(), id);
        }
    }
    let graph: Graph<L> = c.graph.renamed(&names, &BTreeMap::new())?;
    EGraph::new(graph, reserved)
}

/// The size measure used to orient rules and bound normalisation: vertex
/// count, then edge count.
pub fn pattern_size<L>(p: &GraphPattern<L>) -> (usize, usize) {
    (p.graph().vertex_count(), p.graph().edge_count())
}

/// A named theory: the object-level model plus its axioms and the trusted
/// derived rules shipped with it.
#[derive(Clone, Debug)]
pub struct Theory<T: LabelTheory> {
    pub name: String,
    pub model: T,
    pub axioms: Vec<Rule<T::Label>>,
    pub lemmas: Vec<Rule<T::Label>>,
}

impl<T: LabelTheory> Theory<T> {
    pub fn rule(&self, name: &str) -> Option<&Rule<T::Label>> {
        self.axioms
            .iter()
            .chain(&self.lemmas)
            .find(|r| r.name == name)
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule<T::Label>> {
        self.axioms.iter().chain(&self.lemmas)
    }
}
