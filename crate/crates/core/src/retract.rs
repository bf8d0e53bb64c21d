//! Retractions `x ~ y ⇔ L_x = L_y`, the multipermutation level, retract
//! orbits, and unions of two solutions (twisted and generalized twisted).

use serde::Serialize;

use crate::actions::compute_actions;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::solution::{classify, Pair, PropertyReport, SolutionMap};

/// One retraction: the classes of equal `L_x` and the solution they carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractStep {
    /// Classes sorted by least element, each sorted.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[x]` is the index of the class of `x`.
    pub class_of: Vec<usize>,
    pub induced: SolutionMap,
}

impl RetractStep {
    pub fn is_irretractable(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

fn require_square_free(s: &SolutionMap) -> Result<()> {
    if !classify(s).is_square_free_solution() {
        return Err(Error::Contract("retraction needs a square-free involutive non-degenerate solution".into()));
    }
    Ok(())
}

/// The retraction of `s`, checked to be well defined on every pair of elements.
pub fn retract(s: &SolutionMap) -> Result<RetractStep> {
    require_square_free(s)?;
    let actions = compute_actions(s)?;
    let n = s.n();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for (x, slot) in class_of.iter_mut().enumerate() {
        match classes.iter().position(|c| actions.left[c[0]] == actions.left[x]) {
            Some(k) => {
                classes[k].push(x);
                *slot = k;
            }
            None => {
                *slot = classes.len();
                classes.push(vec![x]);
            }
        }
    }
    let k = classes.len();
    let mut table = vec![(usize::MAX, usize::MAX); k * k];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = s.get(x, y);
            let image = (class_of[u], class_of[v]);
            let slot = &mut table[class_of[x] * k + class_of[y]];
            if *slot == (usize::MAX, usize::MAX) {
                *slot = image;
            } else if *slot != image {
                return Err(Error::Falsification(format!(
                    "retraction is ill defined: class pair ({}, {}) has two images",
                    class_of[x], class_of[y]
                )));
            }
        }
    }
    let induced = SolutionMap::new(k, table)
        .map_err(|e| Error::Falsification(format!("induced retraction is not a bijection: {e}")))?;
    if !classify(&induced).is_square_free_solution() {
        return Err(Error::Falsification("induced retraction is not a square-free solution".into()));
    }
    Ok(RetractStep { classes, class_of, induced })
}

/// The outcome of iterating the retraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Level {
    /// Reached one element after this many retractions.
    Level {
        level: usize,
    },
    /// A retraction of `order > 1` elements is already irretractable.
    Irretractable {
        step: usize,
        order: usize,
    },
    NotWithinBound {
        steps: usize,
    },
}

/// The tower `X, Ret(X), Ret²(X), ..` with its steps.
#[derive(Clone, Debug)]
pub struct RetractTower {
    pub steps: Vec<RetractStep>,
    pub level: Level,
}

impl RetractTower {
    /// Sizes of `X, Ret(X), ..` in order.
    pub fn sizes(&self, n: usize) -> Vec<usize> {
        std::iter::once(n).chain(self.steps.iter().map(|s| s.classes.len())).collect()
    }

    /// Maps each element of `X` to its class after `k` retractions.
    pub fn class_map(&self, n: usize, k: usize) -> Vec<usize> {
        let mut map: Vec<usize> = (0..n).collect();
        for step in &self.steps[..k.min(self.steps.len())] {
            for c in map.iter_mut() {
                *c = step.class_of[*c];
            }
        }
        map
    }
}

pub fn retract_tower(s: &SolutionMap, max_steps: usize) -> Result<RetractTower> {
    require_square_free(s)?;
    let mut steps = Vec::new();
    let mut current = s.clone();
    loop {
        if current.n() <= 1 {
            return Ok(RetractTower { level: Level::Level { level: steps.len() }, steps });
        }
        if steps.len() >= max_steps {
            return Ok(RetractTower { level: Level::NotWithinBound { steps: steps.len() }, steps });
        }
        let step = retract(&current)?;
        if step.is_irretractable() {
            let order = current.n();
            return Ok(RetractTower { level: Level::Irretractable { step: steps.len(), order }, steps });
        }
        current = step.induced.clone();
        steps.push(step);
    }
}

pub fn multipermutation_level(s: &SolutionMap, max_steps: usize) -> Result<Level> {
    Ok(retract_tower(s, max_steps)?.level)
}

/// `[x^{(k)}]`: the elements whose `k`-th retraction image is that of `x`.
/// Checks that the orbit is `r`-invariant and that its restriction has
/// level at most `k`.
pub fn retract_orbit(s: &SolutionMap, x: usize, k: usize) -> Result<Vec<usize>> {
    let tower = retract_tower(s, k)?;
    if k > tower.steps.len() {
        return Err(Error::Contract(format!("tower has only {} steps, asked for {k}", tower.steps.len())));
    }
    let map = tower.class_map(s.n(), k);
    let orbit: Vec<usize> = (0..s.n()).filter(|&y| map[y] == map[x]).collect();
    if !s.is_invariant(&orbit) {
        return Err(Error::Falsification(format!("retract orbit of {} at level {k} is not r-invariant", s.label(x))));
    }
    match multipermutation_level(&s.restrict(&orbit)?, k)? {
        Level::Level { level } if level <= k => Ok(orbit),
        other => Err(Error::Falsification(format!("retract orbit of {} at level {k} has level {other:?}", s.label(x)))),
    }
}

/// Two solutions on disjoint sets with the cross maps between them.
/// `xy[x * ny + y]` is `r(x, y)` as a pair `(y', x')`, and
/// `yx[y * nx + x]` is `r(y, x)` as `(x', y')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionSpec {
    pub x: SolutionMap,
    pub y: SolutionMap,
    pub xy: Vec<Pair>,
    pub yx: Vec<Pair>,
}

impl UnionSpec {
    /// Reads `X`, `Y` and the cross maps off a solution and a partition of its elements.
    pub fn from_partition(s: &SolutionMap, xs: &[usize], ys: &[usize]) -> Result<Self> {
        check_partition(s, xs, ys)?;
        let pos = |set: &[usize], z: usize| set.iter().position(|&w| w == z);
        let (nx, ny) = (xs.len(), ys.len());
        let mut xy = vec![(0, 0); nx * ny];
        let mut yx = vec![(0, 0); ny * nx];
        for (i, &a) in xs.iter().enumerate() {
            for (j, &b) in ys.iter().enumerate() {
                let (u, v) = s.get(a, b);
                xy[i * ny + j] = (pos(ys, u).unwrap(), pos(xs, v).unwrap());
                let (u, v) = s.get(b, a);
                yx[j * nx + i] = (pos(xs, u).unwrap(), pos(ys, v).unwrap());
            }
        }
        Ok(UnionSpec { x: s.restrict(xs)?, y: s.restrict(ys)?, xy, yx })
    }
}

fn check_partition(s: &SolutionMap, xs: &[usize], ys: &[usize]) -> Result<()> {
    let mut seen = vec![false; s.n()];
    for &z in xs.iter().chain(ys) {
        if z >= s.n() {
            return Err(Error::IndexOutOfRange { line: 0, index: z + 1, n: s.n() });
        }
        if std::mem::replace(&mut seen[z], true) {
            return Err(Error::Contract(format!("{} appears twice in the partition", s.label(z))));
        }
    }
    if seen.iter().any(|&b| !b) || xs.is_empty() || ys.is_empty() {
        return Err(Error::Contract("X and Y must be nonempty and cover the solution".into()));
    }
    if !s.is_invariant(xs) || !s.is_invariant(ys) {
        return Err(Error::NotInvariant);
    }
    Ok(())
}

/// Builds `r` on `Z = X ⊔ Y` (the elements of `Y` follow those of `X`) and classifies it.
pub fn assemble_union(u: &UnionSpec) -> Result<(SolutionMap, PropertyReport)> {
    let (nx, ny) = (u.x.n(), u.y.n());
    if u.xy.len() != nx * ny || u.yx.len() != nx * ny {
        return Err(Error::SizeMismatch(format!("cross maps need {} entries each", nx * ny)));
    }
    if u.xy.iter().any(|&(b, a)| b >= ny || a >= nx) || u.yx.iter().any(|&(a, b)| a >= nx || b >= ny) {
        return Err(Error::SizeMismatch("cross map entry out of range".into()));
    }
    let n = nx + ny;
    let z = SolutionMap::from_fn(n, |p, q| match (p < nx, q < nx) {
        (true, true) => u.x.get(p, q),
        (false, false) => {
            let (a, b) = u.y.get(p - nx, q - nx);
            (a + nx, b + nx)
        }
        (true, false) => {
            let (b, a) = u.xy[p * ny + (q - nx)];
            (b + nx, a)
        }
        (false, true) => {
            let (a, b) = u.yx[(p - nx) * nx + q];
            (a, b + nx)
        }
    })?;
    let z = match (u.x.names(), u.y.names()) {
        (Some(a), Some(b)) => z.with_names(a.iter().chain(b).cloned().collect())?,
        _ => z,
    };
    let report = classify(&z);
    Ok((z, report))
}

/// First line of a cross-map file.
pub const CROSS_HEADER: &str = "ybe-cross v1";

/// Reads the cross maps of a union from text of the form
///
/// ```text
/// ybe-cross v1
/// xmap 1 2 -> 2 1   # r(x1, y2) = (y2, x1)
/// ymap 2 1 -> 1 2   # r(y2, x1) = (x1, y2)
/// ```
///
/// with indices counted from 1 inside `X` and inside `Y`. Both maps must be total.
pub fn parse_cross_maps(text: &str, nx: usize, ny: usize) -> Result<(Vec<Pair>, Vec<Pair>)> {
    let syntax = |line: usize, column: usize, message: String| Error::Syntax { line, column, message };
    let mut xy: Vec<Option<Pair>> = vec![None; nx * ny];
    let mut yx: Vec<Option<Pair>> = vec![None; nx * ny];
    let mut header = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, &str)> = content
            .char_indices()
            .filter(|&(i, c)| !c.is_whitespace() && (i == 0 || content[..i].ends_with(char::is_whitespace)))
            .map(|(i, _)| (i + 1, content[i..].split_whitespace().next().unwrap()))
            .collect();
        if toks.is_empty() {
            continue;
        }
        if !header {
            if content.split_whitespace().collect::<Vec<_>>().join(" ") != CROSS_HEADER {
                return Err(syntax(line, toks[0].0, format!("expected header `{CROSS_HEADER}`")));
            }
            header = true;
            continue;
        }
        let (col, kw) = toks[0];
        let (first, second, table) = match kw {
            "xmap" => (nx, ny, &mut xy),
            "ymap" => (ny, nx, &mut yx),
            other => return Err(syntax(line, col, format!("unknown keyword `{other}`"))),
        };
        if toks.len() != 6 || toks[3].1 != "->" {
            return Err(syntax(line, col, format!("expected `{kw} i j -> k l`")));
        }
        let mut nums = [0usize; 4];
        for (slot, &(c, t)) in nums.iter_mut().zip([toks[1], toks[2], toks[4], toks[5]].iter()) {
            *slot = t.parse().map_err(|_| syntax(line, c, format!("expected an index, found `{t}`")))?;
        }
        // inputs (first, second) map to outputs (second, first)
        let limits = [first, second, second, first];
        for (v, lim) in nums.iter().zip(limits) {
            if *v == 0 || *v > lim {
                return Err(Error::IndexOutOfRange { line, index: *v, n: lim });
            }
        }
        let slot = &mut table[(nums[0] - 1) * second + nums[1] - 1];
        if slot.is_some() {
            return Err(Error::DuplicateMapping { line, pair: (nums[0] - 1, nums[1] - 1) });
        }
        *slot = Some((nums[2] - 1, nums[3] - 1));
    }
    if !header {
        return Err(syntax(1, 1, format!("missing header `{CROSS_HEADER}`")));
    }
    let complete = |t: Vec<Option<Pair>>, what: &str| -> Result<Vec<Pair>> {
        t.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Contract(format!("cross map {what} is not total")))
    };
    Ok((complete(xy, "xmap")?, complete(yx, "ymap")?))
}

/// Renders cross maps in the format read by [`parse_cross_maps`].
pub fn serialize_cross_maps(u: &UnionSpec) -> String {
    let (nx, ny) = (u.x.n(), u.y.n());
    let mut out = format!("{CROSS_HEADER}\n");
    for x in 0..nx {
        for y in 0..ny {
            let (b, a) = u.xy[x * ny + y];
            out.push_str(&format!("xmap {} {} -> {} {}\n", x + 1, y + 1, b + 1, a + 1));
        }
    }
    for y in 0..ny {
        for x in 0..nx {
            let (a, b) = u.yx[y * nx + x];
            out.push_str(&format!("ymap {} {} -> {} {}\n", y + 1, x + 1, a + 1, b + 1));
        }
    }
    out
}

/// Which union structure a partition carries. The two formulations of the
/// generalized case are computed independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedUnionReport {
    /// `L_x|Y` is the same `g` for all `x` and `L_y|X` the same `f` for all `y`.
    pub twisted: bool,
    /// For each `x`, `L_{x^y}|Y` does not depend on `y`; for each `y`,
    /// `R_{^x y}|X` does not depend on `x`.
    pub generalized_star: bool,
    /// `L_{x^y}|Y = L_x|Y = L_{^y x}|Y` and `L_{^x y}|X = L_y|X = L_{y^x}|X` for all pairs.
    pub generalized_equalities: bool,
    /// The first pair violating the equalities, if any.
    pub witness: Option<(usize, usize)>,
}

impl TwistedUnionReport {
    pub fn generalized(&self) -> bool {
        self.generalized_star && self.generalized_equalities
    }

    pub fn formulations_agree(&self) -> bool {
        self.generalized_star == self.generalized_equalities
    }
}

pub fn is_generalized_twisted_union(s: &SolutionMap, xs: &[usize], ys: &[usize]) -> Result<TwistedUnionReport> {
    check_partition(s, xs, ys)?;
    let a = compute_actions(s)?;
    let on = |p: &Permutation, set: &[usize]| -> Vec<usize> { set.iter().map(|&z| p.apply(z)).collect() };
    let left_x = |x: usize| on(&a.left[x], ys);
    let left_y = |y: usize| on(&a.left[y], xs);

    let twisted = xs.iter().all(|&x| left_x(x) == left_x(xs[0])) && ys.iter().all(|&y| left_y(y) == left_y(ys[0]));

    let mut star = true;
    for &x in xs {
        let first = left_x(a.right[ys[0]].apply(x));
        star &= ys.iter().all(|&y| left_x(a.right[y].apply(x)) == first);
    }
    for &y in ys {
        let first = on(&a.right[a.left[xs[0]].apply(y)], xs);
        star &= xs.iter().all(|&x| on(&a.right[a.left[x].apply(y)], xs) == first);
    }

    let mut witness = None;
    'pairs: for &x in xs {
        for &y in ys {
            let lx = left_x(x);
            let ly = left_y(y);
            let ok = left_x(a.right[y].apply(x)) == lx
                && left_x(a.left[y].apply(x)) == lx
                && left_y(a.left[x].apply(y)) == ly
                && left_y(a.right[x].apply(y)) == ly;
            if !ok {
                witness = Some((x, y));
                break 'pairs;
            }
        }
    }
    Ok(TwistedUnionReport { twisted, generalized_star: star, generalized_equalities: witness.is_none(), witness })
}

/// Blocks `[x^{(k)}]` partitioning `X`, listed by least element.
pub fn retract_blocks(s: &SolutionMap, k: usize) -> Result<Vec<Vec<usize>>> {
    let tower = retract_tower(s, k)?;
    let map = tower.class_map(s.n(), k);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..s.n() {
        match blocks.iter_mut().find(|b| map[b[0]] == map[x]) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    Ok(blocks)
}
