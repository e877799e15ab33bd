//! Finite models of joins of G-spaces: the interval is replaced by a grid
//! of rationals and quotients are computed with union-find.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::index::parse_rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicError {
    #[error("action is not a right action: {0}")]
    InvalidAction(String),
    #[error("spaces are acted on by different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("group action is not well defined on class {class} (element {g})")]
    IllDefined { class: usize, g: usize },
    #[error("census depth {0} exceeds 4")]
    TooDeep(usize),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Finite set with a right action of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGSpace {
    name: String,
    group: FiniteGroup,
    labels: Vec<String>,
    /// `action[x][g] = x·g`
    action: Vec<Vec<usize>>,
}

impl FiniteGSpace {
    /// Checks `x·e = x` and `(x·g)·h = x·(gh)`.
    pub fn new(
        name: impl Into<String>,
        group: FiniteGroup,
        labels: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, ClassicError> {
        let n = labels.len();
        if action.len() != n {
            return Err(ClassicError::InvalidAction(format!("{} rows for {} points", action.len(), n)));
        }
        for (x, row) in action.iter().enumerate() {
            if row.len() != group.order() || row.iter().any(|&y| y >= n) {
                return Err(ClassicError::InvalidAction(format!("row {x} is malformed")));
            }
            if row[group.identity()] != x {
                return Err(ClassicError::InvalidAction(format!("identity moves point {x}")));
            }
            for g in group.elements() {
                for h in group.elements() {
                    if action[row[g]][h] != row[group.mul(g, h)] {
                        return Err(ClassicError::InvalidAction(format!("(x{x}·g{g})·g{h} != x{x}·(g{g}g{h})")));
                    }
                }
            }
        }
        Ok(FiniteGSpace { name: name.into(), group, labels, action })
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: &FiniteGroup) -> Self {
        let action = group.elements().map(|x| group.elements().map(|g| group.mul(x, g)).collect()).collect();
        let labels = group.elements().map(|g| format!("g{g}")).collect();
        FiniteGSpace { name: group.name().to_string(), group: group.clone(), labels, action }
    }

    /// `n` points, each fixed by the whole group.
    pub fn trivial(group: &FiniteGroup, n: usize) -> Self {
        let action = (0..n).map(|x| vec![x; group.order()]).collect();
        let labels = (0..n).map(|x| format!("p{x}")).collect();
        FiniteGSpace { name: format!("pt{n}"), group: group.clone(), labels, action }
    }

    pub fn point(group: &FiniteGroup) -> Self {
        Self::trivial(group, 1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }

    /// A point and a nontrivial element fixing it, if any.
    pub fn fixed_point(&self) -> Option<(usize, usize)> {
        let e = self.group.identity();
        (0..self.len()).find_map(|x| self.group.elements().find(|&g| g != e && self.act(x, g) == x).map(|g| (x, g)))
    }

    pub fn is_free(&self) -> bool {
        self.fixed_point().is_none()
    }
}

/// Sorted grid in `[0, 1]` containing both endpoints.
pub fn make_grid(points: &[BigRational]) -> Result<Vec<BigRational>, ClassicError> {
    let set: BTreeSet<BigRational> = points.iter().cloned().collect();
    if set.iter().any(|t| *t < BigRational::zero() || *t > BigRational::one()) {
        return Err(ClassicError::BadGrid("points must lie in [0, 1]".into()));
    }
    if !set.contains(&BigRational::zero()) || !set.contains(&BigRational::one()) {
        return Err(ClassicError::BadGrid("grid must contain 0 and 1".into()));
    }
    Ok(set.into_iter().collect())
}

/// Parses a comma separated grid such as `0,0.5,1` or `0,1/3,2/3,1`.
pub fn parse_grid(s: &str) -> Result<Vec<BigRational>, ClassicError> {
    let pts = s
        .split(',')
        .map(|p| parse_rational(p).map_err(|e| ClassicError::BadGrid(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    make_grid(&pts)
}

/// `{0, ½, 1}`
pub fn default_grid() -> Vec<BigRational> {
    let two = BigRational::from_integer(2.into());
    vec![BigRational::zero(), BigRational::one() / two, BigRational::one()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JoinKind {
    /// `(0,x,y) ∼ (0,x′,y)`, `(1,x,y) ∼ (1,x,y′)`, diagonal action.
    Join,
    /// `(0,x,h) ∼ (0,x′,h)`, `(1,x,h) ∼ (1,x′,h′)` when `xh = x′h′`,
    /// action on the last factor only.
    JoinPrime,
}

/// Quotient of `grid × X × Y` with the induced group action on classes.
#[derive(Clone, Debug)]
pub struct JoinModel {
    kind: JoinKind,
    x: FiniteGSpace,
    y: FiniteGSpace,
    grid: Vec<BigRational>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
}

/// Flat index of `(t, x, y)`.
fn triple(ti: usize, x: usize, y: usize, nx: usize, ny: usize) -> usize {
    (ti * nx + x) * ny + y
}

impl JoinModel {
    fn generate(
        kind: JoinKind,
        x: FiniteGSpace,
        y: FiniteGSpace,
        grid: Vec<BigRational>,
    ) -> Result<Self, ClassicError> {
        let grid = make_grid(&grid)?;
        let (nx, ny, nt) = (x.len(), y.len(), grid.len());
        let mut uf = UnionFind::<usize>::new(nt * nx * ny);
        for (a, b) in Self::relation_pairs(kind, &x, &y, nt) {
            uf.union(a, b);
        }
        let mut m = JoinModel { kind, x, y, grid, class_of: Vec::new(), classes: Vec::new(), action: Vec::new() };
        m.set_partition(&mut uf);
        m.compute_action()?;
        Ok(m)
    }

    /// Generating pairs of the equivalence relation.
    fn relation_pairs(kind: JoinKind, x: &FiniteGSpace, y: &FiniteGSpace, nt: usize) -> Vec<(usize, usize)> {
        let (nx, ny) = (x.len(), y.len());
        let last = nt - 1;
        let mut pairs = Vec::new();
        for xi in 0..nx {
            for yi in 0..ny {
                pairs.push((triple(0, xi, yi, nx, ny), triple(0, 0, yi, nx, ny)));
                match kind {
                    JoinKind::Join => pairs.push((triple(last, xi, yi, nx, ny), triple(last, xi, 0, nx, ny))),
                    JoinKind::JoinPrime => {
                        // xh = (xh)·e
                        let e = y.group().identity();
                        pairs.push((triple(last, xi, yi, nx, ny), triple(last, x.act(xi, yi), e, nx, ny)));
                    }
                }
            }
        }
        pairs
    }

    fn set_partition(&mut self, uf: &mut UnionFind<usize>) {
        let n = self.grid.len() * self.x.len() * self.y.len();
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        self.class_of = Vec::with_capacity(n);
        self.classes.clear();
        for p in 0..n {
            let root = uf.find(p);
            let next = ids.len();
            let c = *ids.entry(root).or_insert(next);
            if c == self.classes.len() {
                self.classes.push(Vec::new());
            }
            self.classes[c].push(p);
            self.class_of.push(c);
        }
    }

    fn act_triple(&self, p: usize, g: usize) -> usize {
        let (ti, xi, yi) = self.split(p);
        let (nx, ny) = (self.x.len(), self.y.len());
        match self.kind {
            JoinKind::Join => triple(ti, self.x.act(xi, g), self.y.act(yi, g), nx, ny),
            JoinKind::JoinPrime => triple(ti, xi, self.y.act(yi, g), nx, ny),
        }
    }

    fn compute_action(&mut self) -> Result<(), ClassicError> {
        let group = self.group().clone();
        let mut action = Vec::with_capacity(self.classes.len());
        for (c, members) in self.classes.iter().enumerate() {
            let mut row = Vec::with_capacity(group.order());
            for g in group.elements() {
                let target = self.class_of[self.act_triple(members[0], g)];
                if members.iter().any(|&p| self.class_of[self.act_triple(p, g)] != target) {
                    return Err(ClassicError::IllDefined { class: c, g });
                }
                row.push(target);
            }
            action.push(row);
        }
        self.action = action;
        Ok(())
    }

    /// `(t index, x, y)` of a flat triple index.
    pub fn split(&self, p: usize) -> (usize, usize, usize) {
        let (nx, ny) = (self.x.len(), self.y.len());
        (p / (nx * ny), (p / ny) % nx, p % ny)
    }

    pub fn kind(&self) -> JoinKind {
        self.kind
    }

    pub fn group(&self) -> &FiniteGroup {
        self.x.group()
    }

    pub fn grid(&self) -> &[BigRational] {
        &self.grid
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, ti: usize, x: usize, y: usize) -> usize {
        self.class_of[triple(ti, x, y, self.x.len(), self.y.len())]
    }

    /// Members of each class as `(t index, x, y)`.
    pub fn class_members(&self, c: usize) -> Vec<(usize, usize, usize)> {
        self.classes[c].iter().map(|&p| self.split(p)).collect()
    }

    /// Grid index shared by all members of class `c`.
    pub fn layer_of(&self, c: usize) -> usize {
        self.split(self.classes[c][0]).0
    }

    pub fn act(&self, c: usize, g: usize) -> usize {
        self.action[c][g]
    }

    /// Number of classes in each grid layer.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.grid.len()];
        for c in 0..self.classes.len() {
            counts[self.layer_of(c)] += 1;
        }
        counts
    }

    /// A class and a nontrivial element fixing it, if any.
    pub fn fixed_class(&self) -> Option<(usize, usize)> {
        let e = self.group().identity();
        (0..self.num_classes())
            .find_map(|c| self.group().elements().find(|&g| g != e && self.act(c, g) == c).map(|g| (c, g)))
    }

    /// Rebuilds the quotient starting from the current partition and checks
    /// that no class merges.
    pub fn is_idempotent(&self) -> bool {
        let n = self.class_of.len();
        let mut uf = UnionFind::<usize>::new(n);
        for members in &self.classes {
            for &p in &members[1..] {
                uf.union(members[0], p);
            }
        }
        for (a, b) in Self::relation_pairs(self.kind, &self.x, &self.y, self.grid.len()) {
            uf.union(a, b);
        }
        let mut rebuilt = self.clone();
        rebuilt.set_partition(&mut uf);
        rebuilt.class_of == self.class_of
    }

    /// The quotient as a G-space in its own right, for iterated joins.
    pub fn as_gspace(&self) -> FiniteGSpace {
        let labels = (0..self.num_classes())
            .map(|c| {
                let (ti, x, y) = self.split(self.classes[c][0]);
                format!("[{}, {}, {}]", self.grid[ti], self.x.labels[x], self.y.labels[y])
            })
            .collect();
        FiniteGSpace {
            name: format!("{}*{}", self.x.name, self.y.name),
            group: self.group().clone(),
            labels,
            action: self.action.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "group": self.group().name(),
            "x": self.x.name,
            "y": self.y.name,
            "grid": self.grid.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "layers": self.layer_counts(),
            "classes": self.num_classes(),
            "free": check_free(self),
        })
    }
}

/// `X * Y` under the diagonal action.
pub fn build_join(x: &FiniteGSpace, y: &FiniteGSpace, grid: &[BigRational]) -> Result<JoinModel, ClassicError> {
    if x.group() != y.group() {
        return Err(ClassicError::GroupMismatch(x.group().name().into(), y.group().name().into()));
    }
    JoinModel::generate(JoinKind::Join, x.clone(), y.clone(), grid.to_vec())
}

/// `X * G` in the alternative presentation where `t = 1` collapses along
/// `xh = x′h′`.
pub fn build_join_prime(x: &FiniteGSpace, grid: &[BigRational]) -> Result<JoinModel, ClassicError> {
    let g = FiniteGSpace::regular(x.group());
    JoinModel::generate(JoinKind::JoinPrime, x.clone(), g, grid.to_vec())
}

/// No nontrivial element fixes a class.
pub fn check_free(j: &JoinModel) -> bool {
    j.fixed_class().is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub t: String,
    pub classes: usize,
    pub well_defined: bool,
    pub bijective: bool,
    pub equivariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentificationReport {
    pub group: String,
    pub x: String,
    pub x_free: bool,
    pub layers: Vec<LayerCheck>,
}

impl IdentificationReport {
    pub fn passed(&self) -> bool {
        self.layers.iter().all(|l| l.well_defined && l.bijective && l.equivariant)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["passed"] = json!(self.passed());
        v
    }
}

/// Checks `[(t,x,h)] ↦ [(t, xh⁻¹, h)]` from `X * G` to the primed model,
/// layer by layer.
pub fn check_map_eq6(x: &FiniteGSpace, grid: &[BigRational]) -> Result<IdentificationReport, ClassicError> {
    let group = x.group().clone();
    let g_space = FiniteGSpace::regular(&group);
    let join = build_join(x, &g_space, grid)?;
    let prime = build_join_prime(x, grid)?;
    let image = |p: (usize, usize, usize)| {
        let (ti, xi, h) = p;
        prime.class_of(ti, x.act(xi, group.inv(h)), h)
    };
    // class map, or None where members disagree
    let map: Vec<Option<usize>> = (0..join.num_classes())
        .map(|c| {
            let members = join.class_members(c);
            let target = image(members[0]);
            members.iter().all(|&m| image(m) == target).then_some(target)
        })
        .collect();
    let mut layers = Vec::new();
    for (ti, t) in join.grid().iter().enumerate() {
        let src: Vec<usize> = (0..join.num_classes()).filter(|&c| join.layer_of(c) == ti).collect();
        let dst: BTreeSet<usize> = (0..prime.num_classes()).filter(|&c| prime.layer_of(c) == ti).collect();
        let well_defined = src.iter().all(|&c| map[c].is_some());
        let hit: BTreeSet<usize> = src.iter().filter_map(|&c| map[c]).collect();
        let bijective = well_defined && hit.len() == src.len() && hit == dst;
        let equivariant = well_defined
            && src.iter().all(|&c| group.elements().all(|g| map[join.act(c, g)] == map[c].map(|d| prime.act(d, g))));
        layers.push(LayerCheck { t: t.to_string(), classes: src.len(), well_defined, bijective, equivariant });
    }
    Ok(IdentificationReport { group: group.name().into(), x: x.name().into(), x_free: x.is_free(), layers })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusStage {
    /// Number of join factors minus one.
    pub n: usize,
    pub layers: Vec<usize>,
    pub classes: usize,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub grid: Vec<String>,
    pub stages: Vec<CensusStage>,
}

impl CensusReport {
    pub fn all_free(&self) -> bool {
        self.stages.iter().all(|s| s.free)
    }
}

/// Iterated joins `ℤ/2 * ⋯ * ℤ/2` (`n + 1` factors) with the diagonal
/// action, stage by stage.
pub fn iterated_join_sphere_census(n: usize, grid: &[BigRational]) -> Result<CensusReport, ClassicError> {
    if n > 4 {
        return Err(ClassicError::TooDeep(n));
    }
    let grid = make_grid(grid)?;
    let z2 = FiniteGroup::cyclic(2);
    let factor = FiniteGSpace::regular(&z2);
    let mut space = factor.clone();
    let mut stages = vec![CensusStage { n: 0, layers: vec![space.len()], classes: space.len(), free: space.is_free() }];
    for i in 1..=n {
        let j = build_join(&space, &factor, &grid)?;
        stages.push(CensusStage { n: i, layers: j.layer_counts(), classes: j.num_classes(), free: check_free(&j) });
        space = j.as_gspace();
    }
    Ok(CensusReport { grid: grid.iter().map(|t| t.to_string()).collect(), stages })
}

/// Group by CLI name (`z2`, `z3`, `s3`, ...).
pub fn group_by_name(name: &str) -> Result<FiniteGroup, ClassicError> {
    FiniteGroup::by_name(name).ok_or_else(|| ClassicError::UnknownGroup(name.into()))
}

#[cfg(test)]
mod tests;
