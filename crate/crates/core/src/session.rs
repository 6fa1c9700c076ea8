//! Interactive rewriting state: a current graph, undo and redo stacks, and
//! the trace of applied steps. Matches are addressed by index into the
//! deterministic enumeration together with the hash of the graph they were
//! listed against.

use serde::{Deserialize, Serialize};

use crate::bangbox::GraphPattern;
use crate::error::{Error, Result};
use crate::io::pattern_hash;
use crate::rewrite::{prepare_rule, rewrite_matches, rewrite_unchecked, PatternMatch};
use crate::rule::{LabelTheory, Rule, Theory};

/// One applied rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedStep {
    pub rule: String,
    pub reversed: bool,
    pub index: usize,
    pub before: String,
    pub after: String,
}

#[derive(Clone, Debug)]
pub struct Session<T: LabelTheory> {
    pub id: String,
    theory: Theory<T>,
    initial: GraphPattern<T::Label>,
    current: GraphPattern<T::Label>,
    undo: Vec<(AppliedStep, GraphPattern<T::Label>)>,
    redo: Vec<(AppliedStep, GraphPattern<T::Label>)>,
    /// Hash of the graph the most recent listing was made against.
    listed: Option<String>,
}

impl<T: LabelTheory> Session<T>
where
    T::Label: Serialize,
{
    pub fn new(id: impl Into<String>, theory: Theory<T>, graph: GraphPattern<T::Label>) -> Self {
        Session {
            id: id.into(),
            theory,
            initial: graph.clone(),
            current: graph,
            undo: Vec::new(),
            redo: Vec::new(),
            listed: None,
        }
    }

    pub fn graph(&self) -> &GraphPattern<T::Label> {
        &self.current
    }

    pub fn initial(&self) -> &GraphPattern<T::Label> {
        &self.initial
    }

    pub fn theory(&self) -> &Theory<T> {
        &self.theory
    }

    pub fn hash(&self) -> String {
        pattern_hash(&self.current)
    }

    fn rule(&self, name: &str, reversed: bool) -> Result<Rule<T::Label>> {
        let r = self
            .theory
            .rule(name)
            .ok_or_else(|| Error::InvalidRule(format!("no rule named {name}")))?;
        let r = if reversed { r.sym() } else { r.clone() };
        Ok(prepare_rule::<T>(&r, &self.current))
    }

    /// Matches of a rule in the current graph, in enumeration order.
    pub fn list_matches(&mut self, name: &str, reversed: bool) -> Result<Vec<PatternMatch<T::Subst>>> {
        let rule = self.rule(name, reversed)?;
        self.listed = Some(self.hash());
        Ok(rewrite_matches(&self.theory.model, &rule, &self.current))
    }

    /// Applies match `index`. The graph must still have hash `expected`
    /// (or, when none is given, the hash of the last listing).
    pub fn apply(&mut self, name: &str, reversed: bool, index: usize, expected: Option<&str>) -> Result<AppliedStep> {
        let rule = self.rule(name, reversed)?;
        let before = self.hash();
        if let Some(h) = expected.or(self.listed.as_deref()) {
            if h != before {
                return Err(Error::StaleWitness(format!(
                    "graph changed since the match list was made ({h} is now {before})"
                )));
            }
        }
        let matches = rewrite_matches(&self.theory.model, &rule, &self.current);
        let m = matches
            .get(index)
            .ok_or_else(|| Error::StaleWitness(format!("{name} has {} matches, no index {index}", matches.len())))?;
        let next = rewrite_unchecked(&self.theory.model, &rule, &self.current, m)?;
        let step = AppliedStep {
            rule: name.into(),
            reversed,
            index,
            before,
            after: pattern_hash(&next),
        };
        let prev = std::mem::replace(&mut self.current, next);
        self.undo.push((step.clone(), prev));
        self.redo.clear();
        self.listed = None;
        Ok(step)
    }

    pub fn undo(&mut self) -> Result<AppliedStep> {
        let (step, prev) = self
            .undo
            .pop()
            .ok_or_else(|| Error::StaleWitness("nothing to undo".into()))?;
        let after = std::mem::replace(&mut self.current, prev);
        self.redo.push((step.clone(), after));
        self.listed = None;
        Ok(step)
    }

    pub fn redo(&mut self) -> Result<AppliedStep> {
        let (step, next) = self
            .redo
            .pop()
            .ok_or_else(|| Error::StaleWitness("nothing to redo".into()))?;
        let prev = std::mem::replace(&mut self.current, next);
        self.undo.push((step.clone(), prev));
        self.listed = None;
        Ok(step)
    }

    /// The steps leading from the initial graph to the current one.
    pub fn history(&self) -> Vec<AppliedStep> {
        self.undo.iter().map(|(s, _)| s.clone()).collect()
    }

    pub fn can_redo(&self) -> usize {
        self.redo.len()
    }

    /// Replays the history from the initial graph.
    pub fn replay(&self) -> Result<GraphPattern<T::Label>> {
        let mut g = self.initial.clone();
        for s in self.history() {
            let r = self.theory.rule(&s.rule).ok_or_else(|| Error::InvalidRule(s.rule.clone()))?;
            let r = if s.reversed { r.sym() } else { r.clone() };
            let r = prepare_rule::<T>(&r, &g);
            let ms = rewrite_matches(&self.theory.model, &r, &g);
            let m = ms.get(s.index).ok_or_else(|| Error::StaleWitness(format!("replay of {}", s.rule)))?;
            g = rewrite_unchecked(&self.theory.model, &r, &g, m)?;
        }
        Ok(g)
    }
}
