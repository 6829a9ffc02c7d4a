use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Objects and degree-one arrows.
#[derive(Clone, Debug)]
pub struct GradedQuiver {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    object_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    /// position of each arrow in name order
    name_rank: Vec<usize>,
}

impl PartialEq for GradedQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows
    }
}

impl Eq for GradedQuiver {}

impl GradedQuiver {
    /// `arrows` are `(name, source, target)` triples naming declared objects.
    pub fn new<S: AsRef<str>>(objects: &[S], arrows: &[(S, S, S)]) -> Result<GradedQuiver> {
        let mut object_index = HashMap::new();
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate object {o:?}")));
            }
        }
        let mut built = Vec::new();
        let mut arrow_index = HashMap::new();
        for (name, s, t) in arrows {
            let name = name.as_ref().to_string();
            let lookup = |o: &str| {
                object_index
                    .get(o)
                    .copied()
                    .ok_or_else(|| Error::InvalidQuiver(format!("arrow {name:?} uses undeclared object {o:?}")))
            };
            let source = lookup(s.as_ref())?;
            let target = lookup(t.as_ref())?;
            if arrow_index.insert(name.clone(), built.len()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {name:?}")));
            }
            built.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(GradedQuiver::assemble(objects, built, object_index, arrow_index))
    }

    fn assemble(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        object_index: HashMap<String, usize>,
        arrow_index: HashMap<String, usize>,
    ) -> GradedQuiver {
        let mut order: Vec<usize> = (0..arrows.len()).collect();
        order.sort_by(|&a, &b| arrows[a].name.cmp(&arrows[b].name));
        let mut name_rank = vec![0; arrows.len()];
        for (r, &a) in order.iter().enumerate() {
            name_rank[a] = r;
        }
        GradedQuiver {
            objects,
            arrows,
            object_index,
            arrow_index,
            name_rank,
        }
    }

    /// Same objects, every arrow reversed, names kept.
    pub fn opposite(&self) -> GradedQuiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        GradedQuiver::assemble(
            self.objects.clone(),
            arrows,
            self.object_index.clone(),
            self.arrow_index.clone(),
        )
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrows_into(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == y)
    }

    pub fn arrows_out_of(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == x)
    }

    /// Lexicographic comparison of two arrow sequences by arrow name.
    pub fn cmp_words(&self, a: &[usize], b: &[usize]) -> Ordering {
        a.iter()
            .map(|&x| self.name_rank[x])
            .cmp(b.iter().map(|&x| self.name_rank[x]))
    }

    /// Builds a path from arrow names listed left to right (leftmost applied last).
    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let ids = names
            .iter()
            .map(|n| self.arrow_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Path::new(self, ids)
    }
}

/// A composable word of arrows. `arrows[0]` is applied last, so the path
/// `[c, a]` is `c ∘ a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    pub fn identity(x: usize) -> Path {
        Path {
            arrows: Vec::new(),
            source: x,
            target: x,
        }
    }

    pub fn new(q: &GradedQuiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidQuiver("empty arrow list has no endpoints".into()));
        };
        let last = *arrows.last().expect("nonempty");
        for w in arrows.windows(2) {
            let (outer, inner) = (q.arrow(w[0]), q.arrow(w[1]));
            if inner.target != outer.source {
                return Err(Error::InvalidQuiver(format!(
                    "arrows {:?} and {:?} do not compose",
                    outer.name, inner.name
                )));
            }
        }
        Ok(Path {
            source: q.arrow(last).source,
            target: q.arrow(first).target,
            arrows,
        })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Path) -> Path {
        assert_eq!(inner.target, self.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&inner.arrows);
        Path {
            arrows,
            source: inner.source,
            target: self.target,
        }
    }

    /// The same arrows read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            arrows: self.arrows.iter().rev().copied().collect(),
            source: self.target,
            target: self.source,
        }
    }

    pub fn names<'q>(&self, q: &'q GradedQuiver) -> Vec<&'q str> {
        self.arrows.iter().map(|&a| q.arrow(a).name.as_str()).collect()
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.arrows.is_empty() {
            format!("id_{}", q.object_name(self.source))
        } else {
            self.names(q).join("")
        }
    }
}
