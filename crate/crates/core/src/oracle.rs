//! Brute-force breadth-first enumeration of the dual tree.
//!
//! The ball uses nothing but [`FareyTriangle::neighbor`], so distances and
//! fan queries answered here are independent of the geodesic machinery in
//! [`crate::farey`]. Intended for tests and the `oracle-check` command.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::farey::{even_distance, FareyTriangle};
use crate::manifold::ManifoldData;
use crate::slope::{EvenClass, Slope};

pub const DEFAULT_DEPTH_CAP: usize = 25;

#[derive(Clone, Debug)]
struct Node {
    triangle: FareyTriangle,
    parent: Option<usize>,
    depth: usize,
    children: Vec<usize>,
}

/// All triangles within `depth` steps of a seed, as a rooted tree.
#[derive(Clone, Debug)]
pub struct Ball {
    nodes: Vec<Node>,
    index: HashMap<FareyTriangle, usize>,
    fans: HashMap<Slope, Vec<usize>>,
}

impl Ball {
    pub fn new(seed: &FareyTriangle, depth: usize) -> Result<Ball> {
        Ball::with_cap(seed, depth, DEFAULT_DEPTH_CAP)
    }

    pub fn with_cap(seed: &FareyTriangle, depth: usize, cap: usize) -> Result<Ball> {
        if depth > cap {
            return Err(Error::DepthCap {
                requested: depth,
                cap,
            });
        }
        let mut ball = Ball {
            nodes: vec![Node {
                triangle: seed.clone(),
                parent: None,
                depth: 0,
                children: Vec::new(),
            }],
            index: HashMap::from([(seed.clone(), 0)]),
            fans: HashMap::new(),
        };
        let mut head = 0;
        while head < ball.nodes.len() {
            let current = ball.nodes[head].clone();
            if current.depth < depth {
                for v in current.triangle.vertices() {
                    let next = current.triangle.neighbor(v).expect("own vertex");
                    if ball.index.contains_key(&next) {
                        continue;
                    }
                    let id = ball.nodes.len();
                    ball.index.insert(next.clone(), id);
                    ball.nodes.push(Node {
                        triangle: next,
                        parent: Some(head),
                        depth: current.depth + 1,
                        children: Vec::new(),
                    });
                    ball.nodes[head].children.push(id);
                }
            }
            head += 1;
        }
        for (id, node) in ball.nodes.iter().enumerate() {
            for v in node.triangle.vertices() {
                ball.fans.entry(v.clone()).or_default().push(id);
            }
        }
        Ok(ball)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn triangle(&self, id: usize) -> &FareyTriangle {
        &self.nodes[id].triangle
    }

    pub fn triangles(&self) -> impl Iterator<Item = &FareyTriangle> {
        self.nodes.iter().map(|n| &n.triangle)
    }

    pub fn depth(&self, id: usize) -> usize {
        self.nodes[id].depth
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.nodes[id].parent
    }

    pub fn id(&self, triangle: &FareyTriangle) -> Option<usize> {
        self.index.get(triangle).copied()
    }

    /// Every slope that is a vertex of some triangle in the ball, sorted.
    pub fn slopes(&self) -> Vec<Slope> {
        let mut slopes: Vec<Slope> = self.fans.keys().cloned().collect();
        slopes.sort();
        slopes
    }

    pub fn even_slopes(&self, class: EvenClass) -> Vec<Slope> {
        let mut slopes = self.slopes();
        slopes.retain(|s| s.is_even(class));
        slopes
    }

    /// Triangles of the ball having `alpha` as a vertex.
    pub fn fan(&self, alpha: &Slope) -> &[usize] {
        self.fans.get(alpha).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn adjacent(&self, id: usize) -> Vec<usize> {
        let node = &self.nodes[id];
        node.parent
            .iter()
            .copied()
            .chain(node.children.iter().copied())
            .collect()
    }

    /// Node ids from `a` to `b` inclusive, through their common ancestor.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut up = vec![x];
        let mut down = vec![y];
        while self.nodes[x].depth > self.nodes[y].depth {
            x = self.nodes[x].parent.expect("not the root");
            up.push(x);
        }
        while self.nodes[y].depth > self.nodes[x].depth {
            y = self.nodes[y].parent.expect("not the root");
            down.push(y);
        }
        while x != y {
            x = self.nodes[x].parent.expect("not the root");
            y = self.nodes[y].parent.expect("not the root");
            up.push(x);
            down.push(y);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        up
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a, b);
        let mut n = 0;
        while self.nodes[x].depth > self.nodes[y].depth {
            x = self.nodes[x].parent.expect("not the root");
            n += 1;
        }
        while self.nodes[y].depth > self.nodes[x].depth {
            y = self.nodes[y].parent.expect("not the root");
            n += 1;
        }
        while x != y {
            x = self.nodes[x].parent.expect("not the root");
            y = self.nodes[y].parent.expect("not the root");
            n += 2;
        }
        n
    }

    /// The fan member of the ball nearest to `id`, with its distance.
    pub fn nearest_in_fan(&self, id: usize, alpha: &Slope) -> Option<(usize, usize)> {
        self.fan(alpha)
            .iter()
            .map(|&f| (f, self.distance(id, f)))
            .min_by_key(|&(f, d)| (d, f))
    }

    /// The adjacent node strictly closer to the fan of `alpha`.
    pub fn step_toward(&self, id: usize, alpha: &Slope) -> Option<usize> {
        let (_, here) = self.nearest_in_fan(id, alpha)?;
        if here == 0 {
            return None;
        }
        self.adjacent(id).into_iter().find(|&n| {
            self.nearest_in_fan(n, alpha)
                .is_some_and(|(_, d)| d + 1 == here)
        })
    }

    /// Distinct even labels on the tree path between members of two fans,
    /// minus one. Fans are convex, so any pair of members works.
    pub fn even_distance(&self, alpha: &Slope, beta: &Slope, class: EvenClass) -> Option<usize> {
        let a = *self.fan(alpha).first()?;
        let b = *self.fan(beta).first()?;
        let mut labels: Vec<&Slope> = self
            .path(a, b)
            .into_iter()
            .map(|id| self.triangle(id).even_label(class))
            .collect();
        labels.sort();
        labels.dedup();
        Some(labels.len() - 1)
    }
}

/// Agreement counts between the library and the ball around a base.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub triangles: usize,
    pub distance_pairs: usize,
    pub fan_queries: usize,
    pub even_pairs: usize,
    /// The first few disagreements.
    pub mismatches: Vec<String>,
    pub mismatch_count: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }

    fn mismatch(&mut self, message: String) {
        self.mismatch_count += 1;
        if self.mismatches.len() < 10 {
            self.mismatches.push(message);
        }
    }
}

/// Compare distances, fan geodesics and even distances against the ball of
/// radius `depth` around the base: every triangle against the radius-3
/// core, all pairs of the radius-5 core, the base against every slope, and
/// every triangle against the slopes of the radius-2 core.
pub fn check(m: &ManifoldData, depth: usize) -> Result<OracleReport> {
    let base = m.base_triangle()?;
    let class = m.even_class;
    let ball = Ball::new(&base, depth)?;
    let mut report = OracleReport {
        depth,
        triangles: ball.len(),
        ..OracleReport::default()
    };
    let ball = &ball;
    let within = |d: usize| (0..ball.len()).filter(move |&i| ball.depth(i) <= d);
    let near: Vec<usize> = within(3).collect();
    let inner: Vec<usize> = within(5).collect();
    let near = &near;

    let pairs = (0..ball.len())
        .flat_map(|i| near.iter().map(move |&j| (i, j)))
        .chain(
            inner
                .iter()
                .flat_map(|&i| inner.iter().map(move |&j| (i, j))),
        );
    for (i, j) in pairs {
        let (a, b) = (ball.triangle(i), ball.triangle(j));
        let (got, want) = (a.distance(b), ball.distance(i, j));
        if got != want {
            report.mismatch(format!("distance {a} to {b}: {got}, oracle {want}"));
        }
        report.distance_pairs += 1;
    }

    let core: BTreeSet<Slope> = within(2)
        .flat_map(|i| ball.triangle(i).vertices().clone())
        .collect();
    let core = &core;
    let queries = ball
        .slopes()
        .into_iter()
        .map(|a| (0, a))
        .chain((0..ball.len()).flat_map(|i| core.iter().map(move |a| (i, a.clone()))));
    for (i, alpha) in queries {
        report.fan_queries += 1;
        let t = ball.triangle(i);
        let Some((nearest, d)) = ball.nearest_in_fan(i, &alpha) else {
            continue;
        };
        let path = t.geodesic_to_fan(&alpha);
        let end = path.last().map_or(t, |step| &step.to);
        if path.len() != d || end != ball.triangle(nearest) {
            report.mismatch(format!(
                "geodesic {t} to the fan of {alpha}: {} steps to {end}, oracle {d} to {}",
                path.len(),
                ball.triangle(nearest)
            ));
            continue;
        }
        if let Some(next) = ball.step_toward(i, &alpha) {
            if path[0].to != *ball.triangle(next) {
                report.mismatch(format!(
                    "step from {t} toward {alpha}: {}, oracle {}",
                    path[0].to,
                    ball.triangle(next)
                ));
            }
        }
    }

    let inner_even: BTreeSet<Slope> = inner
        .iter()
        .flat_map(|&i| ball.triangle(i).vertices().clone())
        .filter(|v| v.is_even(class))
        .collect();
    let label = base.even_label(class);
    let inner_even = &inner_even;
    let even_pairs = inner_even
        .iter()
        .flat_map(|a| inner_even.iter().map(move |b| (a.clone(), b.clone())))
        .chain(
            ball.even_slopes(class)
                .into_iter()
                .map(|b| (label.clone(), b)),
        );
    for (a, b) in even_pairs {
        report.even_pairs += 1;
        let got = even_distance(&a, &b, class)?;
        let want = ball
            .even_distance(&a, &b, class)
            .expect("slopes of the ball");
        if got != want {
            report.mismatch(format!("even distance {a} to {b}: {got}, oracle {want}"));
        }
    }
    Ok(report)
}
