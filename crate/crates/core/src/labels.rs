//! Effective per-node labels for one attribute or a joint attribute profile.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;

/// Interned category id within one [`LabelView`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u32);

/// One effective label per node.
///
/// With several attributes the label is the tuple of values in declared
/// order; two nodes share a label iff every component matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelView {
    attributes: Vec<String>,
    labels: Vec<Label>,
    /// Component values of each interned label, indexed by `Label.0`.
    categories: Vec<Vec<String>>,
}

/// Separator used when rendering joint labels as text.
pub const JOINT_SEPARATOR: &str = "|";

impl LabelView {
    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn label(&self, node: usize) -> Label {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn category_count(&self) -> usize {
        self.categories.len()
    }

    pub fn components(&self, label: Label) -> &[String] {
        &self.categories[label.0 as usize]
    }

    /// Text form of a label; joint components are joined with [`JOINT_SEPARATOR`].
    pub fn display(&self, label: Label) -> String {
        self.components(label).join(JOINT_SEPARATOR)
    }

    pub fn node_display(&self, node: usize) -> String {
        self.display(self.label(node))
    }

    /// Builds a view from raw per-node labels. Mostly useful in tests.
    pub fn from_values<S: AsRef<str>>(attribute: &str, values: &[S]) -> Self {
        let mut interner = Interner::default();
        let labels = values
            .iter()
            .map(|v| interner.intern(vec![v.as_ref().to_string()]))
            .collect();
        LabelView {
            attributes: vec![attribute.to_string()],
            labels,
            categories: interner.categories,
        }
    }
}

#[derive(Default)]
struct Interner {
    ids: HashMap<Vec<String>, Label>,
    categories: Vec<Vec<String>>,
}

impl Interner {
    fn intern(&mut self, key: Vec<String>) -> Label {
        if let Some(&l) = self.ids.get(&key) {
            return l;
        }
        let l = Label(self.categories.len() as u32);
        self.categories.push(key.clone());
        self.ids.insert(key, l);
        l
    }
}

/// Label view over `names`, in the given order.
pub fn compose_labels<S: AsRef<str>>(g: &AttributedGraph, names: &[S]) -> Result<LabelView> {
    if names.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one attribute name is required".to_string(),
        ));
    }
    let columns = names
        .iter()
        .map(|n| g.attribute_index(n.as_ref()))
        .collect::<Result<Vec<_>>>()?;

    let mut interner = Interner::default();
    let labels = (0..g.node_count())
        .map(|node| {
            let key = columns
                .iter()
                .map(|&c| g.value(node, c).to_string())
                .collect();
            interner.intern(key)
        })
        .collect();
    Ok(LabelView {
        attributes: names.iter().map(|n| n.as_ref().to_string()).collect(),
        labels,
        categories: interner.categories,
    })
}
