//! Completion graph with merging, pruning and blocking. Built on persistent
//! maps so a snapshot for backtracking is a cheap clone.

use std::collections::hash_map::{Entry, HashMap};

use im::{OrdMap, OrdSet, Vector};

use super::vocab::{Cid, Role, Vocab};

pub type NodeId = usize;

type PairKey = (Vec<Cid>, Vec<Cid>, (Vec<u32>, Vec<u32>));

/// Branch levels a fact depends on.
pub(crate) type Deps = OrdSet<usize>;

pub(crate) fn union(a: &Deps, b: &Deps) -> Deps {
    a.clone().union(b.clone())
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub label: OrdMap<Cid, Deps>,
    /// Creator of an anonymous node; `None` for individuals and roots.
    pub parent: Option<NodeId>,
    pub name: Option<String>,
    pub merged_into: Option<NodeId>,
    /// Dependencies of the merge that retired this node.
    pub merge_deps: Deps,
    pub pruned: bool,
}

impl Node {
    pub fn is_anonymous(&self) -> bool {
        self.parent.is_some()
    }
}

/// How anonymous nodes are blocked. With inverse roles a node is blocked by
/// an earlier open node whose label, parent label and connecting edges are
/// the same; without them an ancestor whose label contains the node's label is
/// enough, and without nominals and number restrictions any earlier open node
/// with a larger label will do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) enum Blocking {
    #[default]
    Pairwise,
    Ancestor,
    Anywhere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Open,
    Direct(NodeId),
    Indirect,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Graph {
    pub nodes: Vector<Node>,
    /// Role names on directed edges; an inverse role is stored reversed.
    edges: OrdMap<(NodeId, NodeId), OrdMap<u32, Deps>>,
    adj: Vector<OrdSet<NodeId>>,
    unequal: OrdMap<(NodeId, NodeId), Deps>,
    individuals: OrdMap<String, NodeId>,
    /// Set when two nodes declared unequal were merged.
    pub merge_clash: Option<(NodeId, NodeId, Deps)>,
    blocking: Blocking,
    live: usize,
}

fn ordered(x: NodeId, y: NodeId) -> (NodeId, NodeId) {
    (x.min(y), x.max(y))
}

impl Graph {
    pub fn new(blocking: Blocking) -> Self {
        Graph {
            blocking,
            ..Graph::default()
        }
    }

    pub fn add_node(&mut self, parent: Option<NodeId>, name: Option<String>, label: OrdMap<Cid, Deps>) -> NodeId {
        let id = self.nodes.len();
        if let Some(n) = &name {
            self.individuals.insert(n.clone(), id);
        }
        self.nodes.push_back(Node {
            label,
            parent,
            name,
            merged_into: None,
            merge_deps: Deps::new(),
            pruned: false,
        });
        self.adj.push_back(OrdSet::new());
        self.live += 1;
        id
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn is_live(&self, x: NodeId) -> bool {
        !self.nodes[x].pruned
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&x| self.is_live(x))
    }

    pub fn find(&self, mut x: NodeId) -> NodeId {
        while let Some(y) = self.nodes[x].merged_into {
            x = y;
        }
        x
    }

    /// The node `x` was merged into, with the dependencies of the merges.
    pub fn resolve(&self, mut x: NodeId) -> (NodeId, Deps) {
        let mut deps = Deps::new();
        while let Some(y) = self.nodes[x].merged_into {
            deps = union(&deps, &self.nodes[x].merge_deps);
            x = y;
        }
        (x, deps)
    }

    pub fn individual(&self, name: &str) -> Option<NodeId> {
        self.individuals.get(name).map(|&x| self.find(x))
    }

    pub fn individual_deps(&self, name: &str) -> Option<(NodeId, Deps)> {
        self.individuals.get(name).map(|&x| self.resolve(x))
    }

    pub fn has(&self, x: NodeId, c: Cid) -> bool {
        self.nodes[x].label.contains_key(&c)
    }

    pub fn deps(&self, x: NodeId, c: Cid) -> Deps {
        self.nodes[x].label.get(&c).cloned().unwrap_or_default()
    }

    /// Adds `c` unless present. Returns whether the label changed.
    pub fn add(&mut self, x: NodeId, c: Cid, deps: Deps) -> bool {
        if self.has(x, c) {
            return false;
        }
        self.nodes[x].label.insert(c, deps);
        true
    }

    pub fn labels(&self, x: NodeId) -> Vec<Cid> {
        self.nodes[x].label.keys().copied().collect()
    }

    pub fn add_edge(&mut self, x: NodeId, y: NodeId, r: Role, deps: Deps) {
        let (from, to) = if r.inverse { (y, x) } else { (x, y) };
        self.edges.entry((from, to)).or_default().entry(r.name).or_insert(deps);
        self.adj[from].insert(to);
        self.adj[to].insert(from);
    }

    fn remove_edges(&mut self, x: NodeId) {
        for y in std::mem::take(&mut self.adj[x]) {
            self.edges.remove(&(x, y));
            self.edges.remove(&(y, x));
            self.adj[y].remove(&x);
        }
    }

    /// Dependencies of a stored edge making `x r y` hold, if there is one.
    pub fn holds(&self, x: NodeId, y: NodeId, r: Role, v: &Vocab) -> Option<Deps> {
        let fwd = self
            .edges
            .get(&(x, y))
            .into_iter()
            .flatten()
            .map(|(&n, d)| (n, false, d));
        let bwd = self
            .edges
            .get(&(y, x))
            .into_iter()
            .flatten()
            .map(|(&n, d)| (n, true, d));
        fwd.chain(bwd)
            .find(|&(n, inv, _)| v.supers(n, inv).contains(&r))
            .map(|(_, _, d)| d.clone())
    }

    pub fn neighbors(&self, x: NodeId, r: Role, v: &Vocab) -> Vec<NodeId> {
        self.adj[x]
            .iter()
            .copied()
            .filter(|&y| self.holds(x, y, r, v).is_some())
            .collect()
    }

    pub fn adjacent(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj[x].iter().copied()
    }

    /// Stored edge roles between a parent and a child, both directions.
    fn edge_signature(&self, p: NodeId, x: NodeId) -> (Vec<u32>, Vec<u32>) {
        let names = |k| self.edges.get(&k).into_iter().flat_map(|e| e.keys().copied()).collect();
        (names((p, x)), names((x, p)))
    }

    pub fn set_unequal(&mut self, x: NodeId, y: NodeId, deps: Deps) {
        if x == y {
            self.merge_clash = Some((x, y, deps));
        } else {
            self.unequal.entry(ordered(x, y)).or_insert(deps);
        }
    }

    pub fn is_unequal(&self, x: NodeId, y: NodeId) -> bool {
        self.unequal.contains_key(&ordered(x, y))
    }

    pub fn unequal_deps(&self, x: NodeId, y: NodeId) -> Deps {
        self.unequal.get(&ordered(x, y)).cloned().unwrap_or_default()
    }

    fn kill(&mut self, x: NodeId) {
        self.nodes[x].pruned = true;
        self.live -= 1;
    }

    /// Removes an anonymous node and its descendants.
    fn prune(&mut self, x: NodeId) {
        let children: Vec<NodeId> = self.adj[x]
            .iter()
            .copied()
            .filter(|&c| c != x && self.nodes[c].parent == Some(x))
            .collect();
        self.kill(x);
        self.remove_edges(x);
        for c in children {
            if self.is_live(c) {
                self.prune(c);
            }
        }
    }

    /// Merges `from` into `into`: labels are united, edges to anything but
    /// the anonymous successors of `from` are moved, those successors are
    /// pruned.
    pub fn merge(&mut self, from: NodeId, into: NodeId, deps: &Deps) {
        let (from, into) = (self.find(from), self.find(into));
        if from == into {
            return;
        }
        if self.is_unequal(from, into) {
            self.merge_clash = Some((from, into, union(&self.unequal_deps(from, into), deps)));
        }
        for (c, d) in std::mem::take(&mut self.nodes[from].label) {
            self.add(into, c, union(&d, deps));
        }

        let neighbors: Vec<NodeId> = self.adj[from].iter().copied().collect();
        for y in neighbors {
            if !self.is_live(y) {
                continue;
            }
            if y != from && y != into && self.nodes[y].parent == Some(from) {
                self.prune(y);
                continue;
            }
            let out = self.edges.remove(&(from, y)).unwrap_or_default();
            let inc = if y == from {
                OrdMap::new()
            } else {
                self.edges.remove(&(y, from)).unwrap_or_default()
            };
            let y2 = if y == from { into } else { y };
            for (r, d) in out {
                self.add_edge(
                    into,
                    y2,
                    Role {
                        name: r,
                        inverse: false,
                    },
                    union(&d, deps),
                );
            }
            for (r, d) in inc {
                self.add_edge(
                    y2,
                    into,
                    Role {
                        name: r,
                        inverse: false,
                    },
                    union(&d, deps),
                );
            }
        }
        self.remove_edges(from);

        let pairs: Vec<(NodeId, NodeId)> = self
            .unequal
            .keys()
            .copied()
            .filter(|&(a, b)| a == from || b == from)
            .collect();
        for (a, b) in pairs {
            let d = self.unequal.remove(&(a, b)).unwrap_or_default();
            let other = if a == from { b } else { a };
            if self.is_live(other) {
                self.set_unequal(into, self.find(other), union(&d, deps));
            }
        }
        self.nodes[from].merged_into = Some(into);
        self.nodes[from].merge_deps = deps.clone();
        self.kill(from);
    }

    fn sub_label(&self, x: NodeId, y: NodeId) -> bool {
        let (a, b) = (&self.nodes[x].label, &self.nodes[y].label);
        a.len() <= b.len() && a.keys().all(|c| b.contains_key(c))
    }

    /// A node directly blocking `x`, given the status of earlier nodes.
    fn blocker(&self, x: NodeId, earlier: &[Status]) -> Option<NodeId> {
        let p = self.nodes[x].parent?;
        match self.blocking {
            Blocking::Anywhere => (0..x).find(|&y| {
                self.is_live(y) && self.nodes[y].is_anonymous() && earlier[y] == Status::Open && self.sub_label(x, y)
            }),
            Blocking::Ancestor => {
                let mut y = p;
                while self.nodes[y].is_anonymous() {
                    if self.sub_label(x, y) {
                        return Some(y);
                    }
                    y = self.nodes[y].parent?;
                }
                None
            }
            Blocking::Pairwise => unreachable!("pairwise blocking is looked up by key"),
        }
    }

    /// What pairwise blocking compares: the labels of a node and its parent
    /// and the edges between them. `None` when the parent is not anonymous.
    fn pair_key(&self, x: NodeId) -> Option<PairKey> {
        let p = self.nodes[x].parent?;
        if !self.nodes[p].is_anonymous() {
            return None;
        }
        Some((self.labels(x), self.labels(p), self.edge_signature(p, x)))
    }

    /// Blocking status of every node. Parents and blockers are created
    /// before the nodes they affect, so one pass in creation order suffices.
    pub fn blocking(&self) -> Vec<Status> {
        let mut out = vec![Status::Open; self.nodes.len()];
        let mut open: HashMap<PairKey, NodeId> = HashMap::new();
        for x in self.live_nodes() {
            let parent_blocked = self.nodes[x].parent.is_some_and(|p| out[p] != Status::Open);
            out[x] = if parent_blocked {
                Status::Indirect
            } else if self.blocking == Blocking::Pairwise {
                match self.pair_key(x) {
                    Some(key) => match open.entry(key) {
                        Entry::Occupied(e) => Status::Direct(*e.get()),
                        Entry::Vacant(e) => {
                            e.insert(x);
                            Status::Open
                        }
                    },
                    None => Status::Open,
                }
            } else {
                self.blocker(x, &out).map_or(Status::Open, Status::Direct)
            };
        }
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        self.edges
            .iter()
            .flat_map(|(&(x, y), rs)| rs.keys().map(move |&r| (x, y, r)))
    }
}
