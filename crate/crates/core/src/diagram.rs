//! Oriented link diagrams in PD notation.
//!
//! A crossing `[a, b, c, d]` lists the four incident edges counterclockwise,
//! starting from the incoming under-edge `a`; the under-strand runs `a -> c`.
//! The over-strand runs `b -> d` or `d -> b`, whichever agrees with the
//! traversal order of its component. When a component has only two edges
//! both readings agree and the per-crossing `over_dir` entry decides
//! (`"ascending"` means the incoming over-edge carries the smaller label).
//!
//! A crossing is positive (right-handed) when the over-strand runs `d -> b`.
//! With this convention `[[1,3,2,4],[3,1,4,2]]` is the positive Hopf link.
//!
//! Edge labels of each component form a contiguous range traversed in
//! increasing order and closing up from the last label to the first.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};

/// JSON form of a diagram. Unknown keys are ignored, so surgery files can be
/// read as plain diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over_dir: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_crossing_components: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverDir {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// The PD tuple as given.
    pub pd: [u32; 4],
    pub over_in: u32,
    pub over_out: u32,
    pub sign: i32,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.pd[0]
    }

    pub fn under_out(&self) -> u32 {
        self.pd[2]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ArcInfo {
    component: usize,
    /// Crossing at the head of the edge and whether the edge arrives there
    /// as the under-strand.
    head: usize,
    head_under: bool,
}

/// A validated, immutable diagram. Components are 1-based in the public API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: Option<String>,
    crossings: Vec<Crossing>,
    /// `None` marks a crossingless unknot component.
    components: Vec<Option<(u32, u32)>>,
    arcs: BTreeMap<u32, ArcInfo>,
}

pub fn parse_pd(json: &str) -> Result<LinkDiagram> {
    let pd: PdCode = serde_json::from_str(json)?;
    LinkDiagram::from_pd(&pd)
}

fn label(x: i64, crossing: usize) -> Result<u32> {
    u32::try_from(x).ok().filter(|&l| l > 0).ok_or_else(|| {
        Error::at_crossing(
            crossing,
            format!("edge label {x} is not a positive integer"),
        )
    })
}

type GeneratorTable = (BTreeMap<u32, u32>, Vec<usize>, Vec<Option<u32>>, Vec<u32>);

impl LinkDiagram {
    pub fn from_pd(pd: &PdCode) -> Result<Self> {
        let mut crossings = Vec::with_capacity(pd.crossings.len());
        for (k, t) in pd.crossings.iter().enumerate() {
            crossings.push([
                label(t[0], k)?,
                label(t[1], k)?,
                label(t[2], k)?,
                label(t[3], k)?,
            ]);
        }
        let mut over_dir = vec![None; crossings.len()];
        if let Some(map) = &pd.over_dir {
            for (key, v) in map {
                let k: usize = key.trim().parse().map_err(|_| {
                    Error::diagram(format!("over_dir key {key:?} is not a crossing index"))
                })?;
                if k >= crossings.len() {
                    return Err(Error::diagram(format!(
                        "over_dir refers to crossing {k}, but there are only {}",
                        crossings.len()
                    )));
                }
                over_dir[k] = Some(match v.as_str() {
                    "ascending" => OverDir::Ascending,
                    "descending" => OverDir::Descending,
                    other => {
                        return Err(Error::at_crossing(
                            k,
                            format!(
                                "over_dir must be \"ascending\" or \"descending\", got {other:?}"
                            ),
                        ))
                    }
                });
            }
        }
        let zero = match pd.zero_crossing_components {
            None => 0,
            Some(z) if z >= 0 => z as usize,
            Some(z) => {
                return Err(Error::diagram(format!(
                    "zero_crossing_components must be non-negative, got {z}"
                )))
            }
        };
        let mut components: Vec<Option<(u32, u32)>> = match &pd.components {
            Some(ranges) => ranges
                .iter()
                .map(|r| {
                    let (f, l) = (label(r[0], 0), label(r[1], 0));
                    match (f, l) {
                        (Ok(f), Ok(l)) if f <= l => Ok(Some((f, l))),
                        _ => Err(Error::diagram(format!(
                            "component range [{}, {}] is not an increasing pair of positive labels",
                            r[0], r[1]
                        ))),
                    }
                })
                .collect::<Result<_>>()?,
            None => derive_components(&crossings)?,
        };
        components.extend(std::iter::repeat_n(None, zero));
        Self::build(pd.name.clone(), &crossings, &over_dir, components)
    }

    /// Validate raw crossings against a component layout and resolve
    /// orientations and signs.
    fn build(
        name: Option<String>,
        raw: &[[u32; 4]],
        over_dir: &[Option<OverDir>],
        components: Vec<Option<(u32, u32)>>,
    ) -> Result<Self> {
        // component of every label, checking that ranges are disjoint
        let mut owner: BTreeMap<u32, usize> = BTreeMap::new();
        for (ci, r) in components.iter().enumerate() {
            if let Some((f, l)) = *r {
                if (l - f) as usize > 4 * raw.len() {
                    return Err(Error::diagram(format!(
                        "component {} spans more edges than the crossings can supply",
                        ci + 1
                    )));
                }
                for x in f..=l {
                    if owner.insert(x, ci).is_some() {
                        return Err(Error::at_arc(x, "edge label claimed by two components"));
                    }
                }
            }
        }
        let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
        for (k, t) in raw.iter().enumerate() {
            for &x in t {
                if !owner.contains_key(&x) {
                    return Err(Error::Diagram {
                        crossing: Some(k),
                        arc: Some(x),
                        message: "edge label outside every component range".into(),
                    });
                }
                *seen.entry(x).or_default() += 1;
            }
        }
        for &x in owner.keys() {
            let n = seen.get(&x).copied().unwrap_or(0);
            if n != 2 {
                return Err(Error::at_arc(
                    x,
                    format!("edge label occurs {n} times, expected 2"),
                ));
            }
        }
        let succ = |x: u32| -> u32 {
            let (f, l) = components[owner[&x]].expect("labelled component");
            if x == l {
                f
            } else {
                x + 1
            }
        };

        // under-strands, and over-strands fixed by the traversal order
        let mut over: Vec<Option<(u32, u32)>> = vec![None; raw.len()];
        let mut head_slot: BTreeMap<u32, usize> = BTreeMap::new();
        let mut tail_slot: BTreeMap<u32, usize> = BTreeMap::new();
        for (k, &[a, b, c, d]) in raw.iter().enumerate() {
            if succ(a) != c {
                return Err(Error::at_crossing(
                    k,
                    format!("under-strand {a} -> {c} does not follow the traversal order"),
                ));
            }
            if owner[&b] != owner[&d] {
                return Err(Error::at_crossing(
                    k,
                    format!("over-strand edges {b} and {d} lie on different components"),
                ));
            }
            let fwd = succ(b) == d;
            let bwd = succ(d) == b;
            if !fwd && !bwd {
                return Err(Error::at_crossing(
                    k,
                    format!("over-strand edges {b} and {d} are not consecutive"),
                ));
            }
            let stated = over_dir.get(k).copied().flatten().map(|dir| {
                let (lo, hi) = (b.min(d), b.max(d));
                match dir {
                    OverDir::Ascending => (lo, hi),
                    OverDir::Descending => (hi, lo),
                }
            });
            let forced = match (fwd, bwd) {
                (true, false) => Some((b, d)),
                (false, true) => Some((d, b)),
                _ => None,
            };
            over[k] = match (forced, stated) {
                (Some(f), Some(s)) if f != s => {
                    return Err(Error::at_crossing(
                        k,
                        "over_dir contradicts the traversal order",
                    ))
                }
                (Some(f), _) => Some(f),
                (None, s) => s,
            };
            if head_slot.insert(a, k).is_some() {
                return Err(Error::at_arc(a, "edge enters two crossings"));
            }
            if tail_slot.insert(c, k).is_some() {
                return Err(Error::at_arc(c, "edge leaves two crossings"));
            }
        }
        for (k, o) in over.iter().enumerate() {
            if let Some((i, out)) = *o {
                if head_slot.insert(i, k).is_some() {
                    return Err(Error::at_arc(i, "edge enters two crossings"));
                }
                if tail_slot.insert(out, k).is_some() {
                    return Err(Error::at_arc(out, "edge leaves two crossings"));
                }
            }
        }
        // remaining two-edge components: each edge enters exactly one crossing
        loop {
            let mut progress = false;
            let mut pending = false;
            for (k, &[_, b, _, d]) in raw.iter().enumerate() {
                if over[k].is_some() {
                    continue;
                }
                pending = true;
                let choice = if head_slot.contains_key(&b) || tail_slot.contains_key(&d) {
                    Some((d, b))
                } else if head_slot.contains_key(&d) || tail_slot.contains_key(&b) {
                    Some((b, d))
                } else {
                    None
                };
                if let Some((i, out)) = choice {
                    if head_slot.insert(i, k).is_some() || tail_slot.insert(out, k).is_some() {
                        return Err(Error::at_crossing(
                            k,
                            "inconsistent over-strand orientation",
                        ));
                    }
                    over[k] = Some((i, out));
                    progress = true;
                }
            }
            if !pending {
                break;
            }
            if !progress {
                let k = over
                    .iter()
                    .position(|o| o.is_none())
                    .expect("pending crossing");
                return Err(Error::at_crossing(
                    k,
                    "over-strand orientation is ambiguous; add an over_dir entry",
                ));
            }
        }

        let mut crossings = Vec::with_capacity(raw.len());
        let mut arcs = BTreeMap::new();
        for (k, &pd) in raw.iter().enumerate() {
            let (over_in, over_out) = over[k].expect("resolved");
            let sign = if over_in == pd[3] { 1 } else { -1 };
            crossings.push(Crossing {
                pd,
                over_in,
                over_out,
                sign,
            });
            arcs.insert(
                pd[0],
                ArcInfo {
                    component: owner[&pd[0]],
                    head: k,
                    head_under: true,
                },
            );
            arcs.insert(
                over_in,
                ArcInfo {
                    component: owner[&over_in],
                    head: k,
                    head_under: false,
                },
            );
        }

        let n = components.len();
        let mut between = vec![vec![0usize; n]; n];
        for c in &crossings {
            let (i, j) = (owner[&c.pd[0]], owner[&c.over_in]);
            between[i][j] += 1;
            if i != j {
                between[j][i] += 1;
            }
        }
        for (i, row) in between.iter().enumerate() {
            for (j, &count) in row.iter().enumerate().skip(i + 1) {
                if count % 2 == 1 {
                    return Err(Error::diagram(format!(
                        "components {} and {} cross an odd number of times",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }

        Ok(LinkDiagram {
            name,
            crossings,
            components,
            arcs,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn zero_crossing_components(&self) -> usize {
        self.components.iter().filter(|c| c.is_none()).count()
    }

    /// First and last edge label of a component, `None` for a crossingless
    /// one.
    pub fn component_range(&self, i: usize) -> Result<Option<(u32, u32)>> {
        self.check_component(i)?;
        Ok(self.components[i - 1])
    }

    pub fn component_of_arc(&self, arc: u32) -> Option<usize> {
        self.arcs.get(&arc).map(|a| a.component + 1)
    }

    fn check_component(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.components.len() {
            return Err(Error::ComponentOutOfRange {
                index: i,
                available: self.components.len(),
            });
        }
        Ok(())
    }

    fn owner(&self, arc: u32) -> usize {
        self.arcs[&arc].component
    }

    /// Sum of the signs of the self-crossings of component `i`.
    pub fn writhe(&self, i: usize) -> Result<i64> {
        self.check_component(i)?;
        Ok(self
            .crossings
            .iter()
            .filter(|c| self.owner(c.pd[0]) == i - 1 && self.owner(c.over_in) == i - 1)
            .map(|c| c.sign as i64)
            .sum())
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(Error::SameComponent(i));
        }
        let (i, j) = (i - 1, j - 1);
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let (u, o) = (self.owner(c.pd[0]), self.owner(c.over_in));
                (u == i && o == j) || (u == j && o == i)
            })
            .map(|c| c.sign as i64)
            .sum();
        Ok(total / 2)
    }

    /// Linking numbers with zero on the diagonal; row `i` is component `i+1`.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n_components();
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if i == j {
                            0
                        } else {
                            self.linking_number(i, j).unwrap_or(0)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Generator numbering: components in order, each contributing its edges
    /// in label order, or one generator when crossingless.
    fn generator_table(&self) -> GeneratorTable {
        let mut gen_of = BTreeMap::new();
        let mut gen_comp = Vec::new();
        let mut gen_arc = Vec::new();
        let mut base = Vec::new();
        for (ci, r) in self.components.iter().enumerate() {
            base.push(gen_comp.len() as u32 + 1);
            match *r {
                Some((f, l)) => {
                    for x in f..=l {
                        gen_comp.push(ci + 1);
                        gen_arc.push(Some(x));
                        gen_of.insert(x, gen_comp.len() as u32);
                    }
                }
                None => {
                    gen_comp.push(ci + 1);
                    gen_arc.push(None);
                }
            }
        }
        (gen_of, gen_comp, gen_arc, base)
    }

    /// One generator per edge (and per crossingless component), one
    /// conjugation relation per crossing.
    pub fn wirtinger(&self) -> WirtingerPresentation {
        let (gen_of, generator_component, generator_arc, base_meridian) = self.generator_table();
        let relations = self
            .crossings
            .iter()
            .map(|c| Relation {
                under_in: gen_of[&c.pd[0]],
                over: gen_of[&c.over_in],
                under_out: gen_of[&c.pd[2]],
                over_out: gen_of[&c.over_out],
                sign: c.sign,
            })
            .collect();
        let walks = self
            .components
            .iter()
            .enumerate()
            .map(|(ci, r)| match *r {
                None => vec![Step {
                    generator: base_meridian[ci],
                    under: None,
                }],
                Some((f, l)) => (f..=l)
                    .map(|x| {
                        let info = self.arcs[&x];
                        let c = &self.crossings[info.head];
                        Step {
                            generator: gen_of[&x],
                            under: info.head_under.then(|| (gen_of[&c.over_in], c.sign)),
                        }
                    })
                    .collect(),
            })
            .collect();
        let writhes = (1..=self.n_components())
            .map(|i| self.writhe(i).expect("valid component"))
            .collect();
        WirtingerPresentation {
            n_generators: generator_component.len(),
            generator_component,
            generator_arc,
            relations,
            base_meridian,
            walks,
            writhes,
        }
    }

    pub fn longitude_word(&self, i: usize) -> Result<LongitudeWord> {
        self.wirtinger().longitude(i)
    }

    fn over_dirs(&self, relabel: impl Fn(u32) -> u32) -> Vec<Option<OverDir>> {
        self.crossings
            .iter()
            .map(|c| {
                Some(if relabel(c.over_in) < relabel(c.over_out) {
                    OverDir::Ascending
                } else {
                    OverDir::Descending
                })
            })
            .collect()
    }

    /// The same link with components listed as `order` (1-based old
    /// indices, a permutation).
    pub fn with_component_order(&self, order: &[usize]) -> Result<LinkDiagram> {
        let n = self.n_components();
        let distinct: BTreeSet<usize> = order.iter().copied().collect();
        if order.len() != n || distinct.len() != n {
            return Err(Error::InvalidArgument(format!(
                "component order must be a permutation of 1..={n}"
            )));
        }
        for &i in order {
            self.check_component(i)?;
        }
        let mut map = BTreeMap::new();
        let mut components = Vec::new();
        let mut next = 1u32;
        for &i in order {
            match self.components[i - 1] {
                Some((f, l)) => {
                    components.push(Some((next, next + (l - f))));
                    for x in f..=l {
                        map.insert(x, next + (x - f));
                    }
                    next += l - f + 1;
                }
                None => components.push(None),
            }
        }
        let raw: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| c.pd.map(|x| map[&x]))
            .collect();
        let dirs = self.over_dirs(|x| map[&x]);
        Self::build(self.name.clone(), &raw, &dirs, components)
    }

    /// The sublink on `keep` (1-based, in the given order). Crossings with
    /// dropped components disappear and the edges through them merge.
    pub fn sublink(&self, keep: &[usize]) -> Result<LinkDiagram> {
        let distinct: BTreeSet<usize> = keep.iter().copied().collect();
        if distinct.len() != keep.len() || keep.is_empty() {
            return Err(Error::InvalidArgument(
                "sublink needs a nonempty list of distinct components".into(),
            ));
        }
        for &i in keep {
            self.check_component(i)?;
        }
        let kept: BTreeSet<usize> = keep.iter().map(|i| i - 1).collect();
        let live = |c: &Crossing| {
            kept.contains(&self.owner(c.pd[0])) && kept.contains(&self.owner(c.over_in))
        };
        let mut map = BTreeMap::new();
        let mut components = Vec::new();
        let mut next = 1u32;
        for &i in keep {
            let Some((f, l)) = self.components[i - 1] else {
                components.push(None);
                continue;
            };
            let len = l - f + 1;
            let at = |k: u32| f + (k % len);
            // start on an edge leaving a surviving crossing
            let start = (0..len).find(|&k| {
                let prev = at(k + len - 1);
                live(&self.crossings[self.arcs[&prev].head])
            });
            let Some(start) = start else {
                components.push(None);
                continue;
            };
            let first = next;
            for k in start..start + len {
                let x = at(k);
                map.insert(x, next);
                if live(&self.crossings[self.arcs[&x].head]) {
                    next += 1;
                }
            }
            components.push(Some((first, next - 1)));
        }
        let survivors: Vec<&Crossing> = self.crossings.iter().filter(|c| live(c)).collect();
        let raw: Vec<[u32; 4]> = survivors.iter().map(|c| c.pd.map(|x| map[&x])).collect();
        let dirs = survivors
            .iter()
            .map(|c| {
                Some(if map[&c.over_in] < map[&c.over_out] {
                    OverDir::Ascending
                } else {
                    OverDir::Descending
                })
            })
            .collect::<Vec<_>>();
        Self::build(self.name.clone(), &raw, &dirs, components)
    }
}

/// Components from the strand structure alone, ordered by smallest label.
fn derive_components(raw: &[[u32; 4]]) -> Result<Vec<Option<(u32, u32)>>> {
    let labels: BTreeSet<u32> = raw.iter().flatten().copied().collect();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b, c, d] in raw {
        for (u, v) in [(a, c), (b, d)] {
            let (ru, rv) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
            parent[ru] = rv;
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (&x, &i) in &index {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(x);
    }
    let mut ranges: Vec<(u32, u32)> = Vec::new();
    for g in groups.values() {
        let (f, l) = (g[0], *g.last().expect("nonempty"));
        if (l - f) as usize + 1 != g.len() {
            return Err(Error::diagram(format!(
                "edges {f}..{l} of one component are not consecutive; give \"components\" explicitly"
            )));
        }
        ranges.push((f, l));
    }
    ranges.sort();
    Ok(ranges.into_iter().map(Some).collect())
}

/// `gen[under_out] = gen[over]^sign * gen[under_in] * gen[over]^-sign`, and
/// the over-strand keeps its generator: `gen[over_out] = gen[over]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub under_in: u32,
    pub over: u32,
    pub under_out: u32,
    pub over_out: u32,
    pub sign: i32,
}

/// One edge of a component walk, with the crossing at its head when the
/// walk passes under there: `(over generator, sign)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub generator: u32,
    pub under: Option<(u32, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub n_generators: usize,
    /// Component (1-based) of generator `g` at position `g - 1`.
    pub generator_component: Vec<usize>,
    /// Edge label of each generator; `None` for a crossingless component.
    pub generator_arc: Vec<Option<u32>>,
    pub relations: Vec<Relation>,
    /// Base meridian generator of each component: its lowest edge.
    pub base_meridian: Vec<u32>,
    walks: Vec<Vec<Step>>,
    writhes: Vec<i64>,
}

impl WirtingerPresentation {
    pub fn n_components(&self) -> usize {
        self.base_meridian.len()
    }

    pub fn component_of(&self, generator: u32) -> usize {
        self.generator_component[generator as usize - 1]
    }

    /// Edges of component `i` in traversal order, starting at the base edge.
    pub fn walk(&self, i: usize) -> Result<&[Step]> {
        self.walks
            .get(i.wrapping_sub(1))
            .map(Vec::as_slice)
            .ok_or(Error::ComponentOutOfRange {
                index: i,
                available: self.walks.len(),
            })
    }

    pub fn writhe(&self, i: usize) -> Result<i64> {
        self.walk(i)?;
        Ok(self.writhes[i - 1])
    }

    /// The 0-framed longitude of component `i`, as a word in edge
    /// generators. Walking from the base edge, each under-pass by `o` with
    /// sign `s` multiplies on the left by `o^s`; the product commutes with
    /// the base meridian. The self-writhe is then cancelled by a power of
    /// the base meridian.
    pub fn longitude(&self, i: usize) -> Result<LongitudeWord> {
        let walk = self.walk(i)?;
        let mut rev = Vec::new();
        for step in walk {
            if let Some((o, s)) = step.under {
                rev.push(Letter::from_signed(o, s));
            }
        }
        rev.reverse();
        let base = self.base_meridian[i - 1];
        let framing = Word::generator(base).pow(-self.writhes[i - 1]);
        Ok(LongitudeWord {
            component: i,
            word: Word::reduce(rev).multiply(&framing),
        })
    }
}

/// A 0-framed longitude in edge generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeWord {
    pub component: usize,
    pub word: Word,
}

impl LongitudeWord {
    /// Exponent sums of the word grouped by component.
    pub fn abelianization(&self, p: &WirtingerPresentation) -> Vec<i64> {
        let mut out = vec![0; p.n_components()];
        for l in self.word.letters() {
            out[p.component_of(l.index()) - 1] += l.sign() as i64;
        }
        out
    }
}
