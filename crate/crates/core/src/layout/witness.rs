//! The paths the construction guarantees: `P_x` towards `v`, `Q_x` towards `u`
//! and `P_xy` between every ordered pair.

use std::collections::{BTreeMap, BTreeSet};

use crate::plane_graph::VertexId;

type Path = Vec<VertexId>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// `P_x`, ending at `v`.
    pub to_v: BTreeMap<VertexId, Path>,
    /// `Q_x`, ending at `u`.
    pub to_u: BTreeMap<VertexId, Path>,
    /// `P_xy` for every ordered pair of distinct vertices.
    pub pairs: BTreeMap<(VertexId, VertexId), Path>,
}

fn join(mut a: Path, b: &[VertexId]) -> Path {
    debug_assert_eq!(a.last(), b.first(), "paths do not meet");
    a.extend_from_slice(&b[1..]);
    a
}

fn get(map: &BTreeMap<VertexId, Path>, x: VertexId) -> Path {
    map.get(&x).cloned().unwrap_or_else(|| panic!("no witness path from {x}"))
}

fn pair(w: &Witnesses, x: VertexId, y: VertexId) -> Path {
    w.pairs.get(&(x, y)).cloned().unwrap_or_else(|| panic!("no witness path from {x} to {y}"))
}

pub(super) fn trivial(u: VertexId, v: VertexId) -> Witnesses {
    Witnesses {
        to_v: [(u, vec![u, v]), (v, vec![v])].into(),
        to_u: [(u, vec![u]), (v, vec![v, u])].into(),
        pairs: [((u, v), vec![u, v]), ((v, u), vec![v, u])].into(),
    }
}

/// Everything runs along `beta = b_1 .. b_m` except `P_{b_1}`, which is the edge `b_1 b_m`.
pub(super) fn cycle(beta: &[VertexId]) -> Witnesses {
    let m = beta.len();
    let mut w = Witnesses::default();
    for i in 0..m {
        let fwd = beta[i..].to_vec();
        let back: Path = beta[..=i].iter().rev().copied().collect();
        w.to_v.insert(beta[i], if i == 0 { vec![beta[0], beta[m - 1]] } else { fwd });
        w.to_u.insert(beta[i], back);
        for j in 0..m {
            let path: Path = if i < j {
                beta[i..=j].to_vec()
            } else {
                beta[j..=i].iter().rev().copied().collect()
            };
            if i != j {
                w.pairs.insert((beta[i], beta[j]), path);
            }
        }
    }
    w
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Loc {
    Joint(usize),
    /// 1-based block index.
    Inner(usize),
}

impl Loc {
    fn rank(self) -> usize {
        match self {
            Loc::Joint(a) => 2 * a,
            Loc::Inner(i) => 2 * i - 1,
        }
    }
}

/// Blocks `G_1 .. G_k` glued at joints `u_0 .. u_k`.
pub(super) struct Chain<'a> {
    joints: Vec<VertexId>,
    taus: Vec<&'a [VertexId]>,
    tables: Vec<&'a Witnesses>,
    sets: Vec<BTreeSet<VertexId>>,
    /// In a top-level chain the first block's paths are cut short at `τ(G_1)`.
    sagged_first: bool,
}

impl<'a> Chain<'a> {
    pub(super) fn new(joints: Vec<VertexId>, taus: Vec<&'a [VertexId]>, tables: Vec<&'a Witnesses>, sagged_first: bool) -> Self {
        let sets = tables.iter().map(|t| t.to_v.keys().copied().collect()).collect();
        Chain {
            joints,
            taus,
            tables,
            sets,
            sagged_first,
        }
    }

    fn k(&self) -> usize {
        self.taus.len()
    }

    fn u(&self, a: usize) -> VertexId {
        self.joints[a]
    }

    fn table(&self, i: usize) -> &Witnesses {
        self.tables[i - 1]
    }

    fn locate(&self, x: VertexId) -> Loc {
        let k = self.k();
        if x == self.joints[0] {
            return Loc::Inner(1);
        }
        if x == self.joints[k] {
            return Loc::Inner(k);
        }
        if let Some(a) = self.joints[1..k].iter().position(|&j| j == x) {
            return Loc::Joint(a + 1);
        }
        let i = self
            .sets
            .iter()
            .position(|s| s.contains(&x))
            .unwrap_or_else(|| panic!("{x} is not in the chain"));
        Loc::Inner(i + 1)
    }

    pub(super) fn contains(&self, x: VertexId) -> bool {
        self.sets.iter().any(|s| s.contains(&x))
    }

    fn common(&self, x: VertexId, y: VertexId) -> Option<usize> {
        self.sets.iter().position(|s| s.contains(&x) && s.contains(&y)).map(|i| i + 1)
    }

    /// Along `τ(G_{a+1}) .. τ(G_b)` from `u_a` to `u_b`.
    fn forward(&self, a: usize, b: usize) -> Path {
        let mut out = vec![self.u(a)];
        for i in a + 1..=b {
            out = join(out, self.taus[i - 1]);
        }
        out
    }

    /// Backwards along the same paths from `u_a` down to `u_b`.
    fn backward(&self, a: usize, b: usize) -> Path {
        let mut out = vec![self.u(a)];
        for i in (b + 1..=a).rev() {
            let rev: Path = self.taus[i - 1].iter().rev().copied().collect();
            out = join(out, &rev);
        }
        out
    }

    /// Cuts `path` at its first vertex of `τ(G_1)` other than `u_0`, returning that vertex's index in `τ(G_1)`.
    fn truncate_at_tau1(&self, path: &[VertexId]) -> Option<(Path, usize)> {
        let c = self.taus[0];
        let cut = path.iter().position(|x| *x != c[0] && c.contains(x))?;
        let at = c.iter().position(|x| *x == path[cut]).unwrap();
        Some((path[..=cut].to_vec(), at))
    }

    /// `P_x` inside the sagged first block, ending at `u_1`.
    fn p1(&self, x: VertexId) -> Path {
        let c = self.taus[0];
        if x == c[0] {
            return c.to_vec();
        }
        let (head, at) = self.truncate_at_tau1(&get(&self.tables[0].to_v, x)).expect("P_x ends on the first outer path");
        join(head, &c[at..])
    }

    /// `Q_x` inside the sagged first block, ending at `u_0`. A path that never
    /// meets the sagged vertices is kept as it is.
    fn q1(&self, x: VertexId) -> Path {
        let c = self.taus[0];
        if x == c[0] {
            return vec![x];
        }
        let q = get(&self.tables[0].to_u, x);
        match self.truncate_at_tau1(&q) {
            Some((head, at)) => {
                let back: Path = c[..=at].iter().rev().copied().collect();
                join(head, &back)
            }
            None => q,
        }
    }

    /// `P_x` along the chain to `u_k`.
    pub(super) fn to_end(&self, x: VertexId) -> Path {
        let k = self.k();
        if x == self.u(k) {
            return vec![x];
        }
        match self.locate(x) {
            Loc::Joint(a) => self.forward(a, k),
            Loc::Inner(1) if self.sagged_first => join(self.p1(x), &self.forward(1, k)),
            Loc::Inner(i) => join(get(&self.table(i).to_v, x), &self.forward(i, k)),
        }
    }

    /// `Q_x` along the chain to `u_0`.
    pub(super) fn to_start(&self, x: VertexId) -> Path {
        match self.locate(x) {
            Loc::Joint(a) => self.backward(a, 0),
            Loc::Inner(1) if self.sagged_first => self.q1(x),
            Loc::Inner(i) => join(get(&self.table(i).to_u, x), &self.backward(i - 1, 0)),
        }
    }

    /// `P_xy` for two chain vertices, `y` different from `u_0`, or `y = u_0` when the first block is sagged.
    pub(super) fn between(&self, x: VertexId, y: VertexId) -> Path {
        let u0 = self.u(0);
        if let Some(i) = self.common(x, y) {
            if i == 1 && self.sagged_first && y == u0 {
                return self.q1(x);
            }
            return pair(self.table(i), x, y);
        }
        let (lx, ly) = (self.locate(x), self.locate(y));
        if lx.rank() < ly.rank() {
            let (start, a) = match lx {
                Loc::Joint(a) => (vec![x], a),
                Loc::Inner(1) if self.sagged_first => (self.p1(x), 1),
                Loc::Inner(i) => (get(&self.table(i).to_v, x), i),
            };
            match ly {
                Loc::Joint(b) => join(start, &self.forward(a, b)),
                Loc::Inner(j) => {
                    let to = join(start, &self.forward(a, j - 1));
                    join(to, &pair(self.table(j), self.u(j - 1), y))
                }
            }
        } else {
            let (start, a) = match lx {
                Loc::Joint(a) => (vec![x], a),
                Loc::Inner(i) => (get(&self.table(i).to_u, x), i - 1),
            };
            match ly {
                Loc::Joint(b) => join(start, &self.backward(a, b)),
                Loc::Inner(1) if y == u0 => join(start, &self.backward(a, 0)),
                Loc::Inner(j) => {
                    let to = join(start, &self.backward(a, j));
                    join(to, &pair(self.table(j), self.u(j), y))
                }
            }
        }
    }
}

/// Tables for `G = G_1 ∪ .. ∪ G_k ∪ {uv}`.
pub(super) fn case_a(chain: &Chain) -> Witnesses {
    let k = chain.k();
    let (u, v) = (chain.u(0), chain.u(k));
    let vertices: BTreeSet<VertexId> = chain.sets.iter().flatten().copied().collect();
    let mut w = Witnesses::default();
    for &x in &vertices {
        let p = if x == u { vec![u, v] } else { chain.to_end(x) };
        let q = if x == v && k >= 2 { vec![v, u] } else { chain.to_start(x) };
        w.to_v.insert(x, p);
        w.to_u.insert(x, q);
    }
    for &x in &vertices {
        for &y in &vertices {
            if x != y {
                w.pairs.insert((x, y), chain.between(x, y));
            }
        }
    }
    w
}

/// Tables for `G = H ∪ chain ∪ {trivial bridges}` with the chain running from `y_ℓ` to `v`.
pub(super) fn case_b(h: &Witnesses, tau_h: &[VertexId], chain: &Chain, v: VertexId) -> Witnesses {
    let y_ell = chain.u(0);
    let u = tau_h[0];
    let in_h = |x: &VertexId| h.to_v.contains_key(x);
    let mut vertices: BTreeSet<VertexId> = h.to_v.keys().copied().collect();
    vertices.extend(chain.sets.iter().flatten().copied());
    let mut w = Witnesses::default();
    for &x in &vertices {
        if in_h(&x) {
            w.to_v.insert(x, join(get(&h.to_v, x), &[tau_h[tau_h.len() - 1], v]));
            w.to_u.insert(x, get(&h.to_u, x));
        } else {
            w.to_v.insert(x, chain.to_end(x));
            w.to_u.insert(x, join(chain.to_start(x), &get(&h.to_u, y_ell)));
        }
    }
    for &x in &vertices {
        for &y in &vertices {
            if x == y {
                continue;
            }
            let path = if in_h(&x) && in_h(&y) {
                pair(h, x, y)
            } else if chain.contains(x) && chain.contains(y) && chain.common(x, y).is_some() {
                chain.between(x, y)
            } else if in_h(&x) {
                let start = if x == u { tau_h.to_vec() } else { get(&h.to_v, x) };
                let to_v = join(start, &[tau_h[tau_h.len() - 1], v]);
                if y == v {
                    to_v
                } else {
                    join(to_v, &chain.between(v, y))
                }
            } else if in_h(&y) {
                let to_y_ell = chain.to_start(x);
                if y == y_ell {
                    to_y_ell
                } else {
                    join(to_y_ell, &pair(h, y_ell, y))
                }
            } else {
                chain.between(x, y)
            };
            w.pairs.insert((x, y), path);
        }
    }
    w
}
