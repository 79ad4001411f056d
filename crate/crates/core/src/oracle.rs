//! Slow reference implementations for cross-checking the main kernels.
//! Nothing here shares code with them beyond the word and series types.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::WirtingerPresentation;
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::magnus::{MultiIndex, TruncatedSeries};

/// Product by enumerating every pair of terms, truncating afterwards.
pub fn naive_series_multiply(
    a: &TruncatedSeries<BigInt>,
    b: &TruncatedSeries<BigInt>,
) -> Result<TruncatedSeries<BigInt>> {
    if a.n_vars() != b.n_vars() || a.cap() != b.cap() {
        return Err(Error::SeriesMismatch("operands differ in shape".into()));
    }
    let mut acc: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
    for (ia, ca) in a.terms() {
        for (ib, cb) in b.terms() {
            let mut key = ia.indices().to_vec();
            key.extend_from_slice(ib.indices());
            *acc.entry(key).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    let cap = a.cap();
    TruncatedSeries::from_terms(
        a.n_vars(),
        cap,
        acc.into_iter()
            .filter(|(k, _)| k.len() <= cap)
            .map(|(k, c)| (MultiIndex::new(k), c)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCommutatorSet {
    pub n_vars: usize,
    pub max_weight: usize,
    /// Each commutator with the weight it was built at.
    pub elements: Vec<(Word, usize)>,
}

/// Left-normed commutators `[[x_i1, x_i2], ..., x_ik]` with `i1 != i2`,
/// together with the generators themselves at weight 1.
pub fn generate_basic_commutators(n_vars: usize, max_weight: usize) -> Result<BasicCommutatorSet> {
    if max_weight > 6 {
        return Err(Error::Resource {
            what: "commutator weight",
            size: max_weight,
            limit: 6,
        });
    }
    let mut elements = Vec::new();
    let mut layer: Vec<Word> = (1..=n_vars as u32).map(Word::generator).collect();
    for w in &layer {
        elements.push((w.clone(), 1));
    }
    for k in 2..=max_weight {
        let mut next = Vec::new();
        for c in &layer {
            for i in 1..=n_vars as u32 {
                if k == 2 && c.letters()[0].index() == i {
                    continue;
                }
                next.push(c.commutator(&Word::generator(i)));
            }
        }
        for w in &next {
            elements.push((w.clone(), k));
        }
        layer = next;
    }
    Ok(BasicCommutatorSet {
        n_vars,
        max_weight,
        elements,
    })
}

/// Longitude of `component` in meridians by repeated sweeps over the
/// relations, each sweep using the images already updated in it.
pub fn oracle_longitude(
    p: &WirtingerPresentation,
    component: usize,
    max_steps: usize,
) -> Result<Word> {
    const LETTER_LIMIT: usize = 1_000_000;
    let n = p.base_meridian.len();
    if component == 0 || component > n {
        return Err(Error::ComponentOutOfRange {
            index: component,
            available: n,
        });
    }
    let comp = |g: u32| p.generator_component[g as usize - 1];
    // successor edge and the relation at the head of each edge
    let mut next = BTreeMap::new();
    let mut under_at = BTreeMap::new();
    for (k, r) in p.relations.iter().enumerate() {
        next.insert(r.under_in, r.under_out);
        next.insert(r.over, r.over_out);
        under_at.insert(r.under_in, k);
    }
    let walk = |start: u32| -> Result<Vec<u32>> {
        let mut out = vec![start];
        let mut g = start;
        while let Some(&h) = next.get(&g) {
            if h == start {
                break;
            }
            if out.len() > p.n_generators {
                return Err(Error::diagram("edge successors do not close up"));
            }
            out.push(h);
            g = h;
        }
        Ok(out)
    };
    let order: Vec<u32> = (1..=n)
        .map(|i| walk(p.base_meridian[i - 1]))
        .collect::<Result<Vec<_>>>()?
        .concat();

    let mut image: Vec<Word> = (1..=p.n_generators as u32)
        .map(|g| Word::generator(comp(g) as u32))
        .collect();
    for _ in 0..max_steps {
        let mut changed = false;
        for &g in &order {
            let Some(&k) = under_at.get(&g) else {
                if let Some(&h) = next.get(&g) {
                    if image[h as usize - 1] != image[g as usize - 1]
                        && h != p.base_meridian[comp(h) - 1]
                    {
                        image[h as usize - 1] = image[g as usize - 1].clone();
                        changed = true;
                    }
                }
                continue;
            };
            let r = p.relations[k];
            if r.under_out == p.base_meridian[comp(r.under_out) - 1] {
                continue;
            }
            let o = image[r.over as usize - 1].pow(r.sign as i64);
            let new = o
                .multiply(&image[r.under_in as usize - 1])
                .multiply(&o.invert());
            if new.len() > LETTER_LIMIT {
                return Err(Error::Resource {
                    what: "word length",
                    size: new.len(),
                    limit: LETTER_LIMIT,
                });
            }
            if new != image[r.under_out as usize - 1] {
                image[r.under_out as usize - 1] = new;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // the longitude itself, read off the walk
    let mut letters: Vec<Letter> = Vec::new();
    let mut own = 0i64;
    for &g in &walk(p.base_meridian[component - 1])? {
        if let Some(&k) = under_at.get(&g) {
            let r = p.relations[k];
            letters.insert(0, Letter::from_signed(r.over, r.sign));
            if comp(r.over) == component {
                own += r.sign as i64;
            }
        }
    }
    let mut result = Word::identity();
    for l in letters {
        result = result.multiply(&image[l.index() as usize - 1].pow(l.sign() as i64));
    }
    Ok(result.multiply(&Word::generator(component as u32).pow(-own)))
}
