//! Rewriting edge generators as words in the base meridians `x_1..x_n`.
//!
//! Every edge generator is a conjugate `v x_i v^-1` of its component's base
//! meridian. At levels 1 and 2 the image of each edge is just `x_i`, which
//! is right modulo `F_2`. A substitution round walks each component from its
//! base edge and rebuilds the conjugators from the previous images; each
//! round gains one level, so level `q` takes `q - 2` rounds and is right
//! modulo `F_q`.
//!
//! Two routes share this schedule: a word route (exact free words, which
//! grow quickly) and a series route that only keeps Magnus expansions
//! truncated at the weights that can still be trusted.

use rayon::prelude::*;

use crate::diagram::{LongitudeWord, WirtingerPresentation};
use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::magnus::TruncatedSeries;
use crate::scalar::Coefficient;
use crate::Guards;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianExpansion {
    pub level: usize,
    /// Image of generator `g` at position `g - 1`, in the meridians
    /// `x_1..x_n` (one per component).
    pub per_arc: Vec<Word>,
}

impl MeridianExpansion {
    pub fn image(&self, generator: u32) -> &Word {
        &self.per_arc[generator as usize - 1]
    }
}

fn rounds_for(level: usize) -> usize {
    level.saturating_sub(2)
}

fn check_letters(w: &Word, limit: usize) -> Result<()> {
    if w.len() > limit {
        return Err(Error::Resource {
            what: "word length",
            size: w.len(),
            limit,
        });
    }
    Ok(())
}

/// Images of all edge generators, correct modulo `F_q`.
pub fn expand_to_level(
    p: &WirtingerPresentation,
    q: usize,
    guards: &Guards,
) -> Result<MeridianExpansion> {
    if q == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let mut per_arc: Vec<Word> = p
        .generator_component
        .iter()
        .map(|&c| Word::generator(c as u32))
        .collect();
    for _ in 0..rounds_for(q) {
        let updates = (1..=p.n_components())
            .into_par_iter()
            .map(|i| substitution_round(p, i, &per_arc, guards.max_letters))
            .collect::<Result<Vec<_>>>()?;
        let mut next = per_arc.clone();
        for list in updates {
            for (g, w) in list {
                next[g as usize - 1] = w;
            }
        }
        per_arc = next;
    }
    Ok(MeridianExpansion { level: q, per_arc })
}

/// New images along component `i` built from the previous ones.
fn substitution_round(
    p: &WirtingerPresentation,
    i: usize,
    old: &[Word],
    max_letters: usize,
) -> Result<Vec<(u32, Word)>> {
    let walk = p.walk(i)?;
    let x = Word::generator(i as u32);
    let mut v = Word::identity();
    let mut image = x.clone();
    let mut out = Vec::with_capacity(walk.len());
    out.push((walk[0].generator, image.clone()));
    for k in 0..walk.len() - 1 {
        if let Some((o, s)) = walk[k].under {
            v = old[o as usize - 1].pow(s as i64).multiply(&v);
            check_letters(&v, max_letters)?;
            image = x.conjugate(&v);
            check_letters(&image, max_letters)?;
        }
        out.push((walk[k + 1].generator, image.clone()));
    }
    Ok(out)
}

/// The longitude rewritten in base meridians, correct modulo `F_q`.
pub fn reduce_longitude(
    p: &WirtingerPresentation,
    l: &LongitudeWord,
    q: usize,
    guards: &Guards,
) -> Result<Word> {
    if q < 2 {
        return Err(Error::InvalidArgument(
            "longitudes are reduced at level 2 or more".into(),
        ));
    }
    let e = expand_to_level(p, q, guards)?;
    l.word.substitute(|g| e.image(g), guards.max_letters)
}

/// Magnus expansions of every edge image and its inverse at level `q`,
/// truncated at weight `max(q - 1, 1)`.
pub fn meridian_series<C: Coefficient>(
    p: &WirtingerPresentation,
    q: usize,
    guards: &Guards,
) -> Result<Vec<SeriesPair<C>>> {
    if q == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let n = p.n_components();
    let mut images: Vec<SeriesPair<C>> = p
        .generator_component
        .iter()
        .map(|&c| {
            Ok((
                TruncatedSeries::generator(n, 1, c)?,
                TruncatedSeries::generator_inverse(n, 1, c)?,
            ))
        })
        .collect::<Result<_>>()?;
    for r in 1..=rounds_for(q) {
        let cap = r + 1;
        let lifted: Vec<_> = images
            .iter()
            .map(|(s, t)| Ok((s.with_cap(cap)?, t.with_cap(cap)?)))
            .collect::<Result<_>>()?;
        let updates = (1..=n)
            .into_par_iter()
            .map(|i| series_round(p, i, &lifted, cap, guards))
            .collect::<Result<Vec<_>>>()?;
        images = lifted;
        for list in updates {
            for (g, pair) in list {
                images[g as usize - 1] = pair;
            }
        }
    }
    Ok(images)
}

/// Magnus expansions of the 0-framed longitudes of every component at level
/// `q`, truncated at weight `q - 1` (the weights that level determines).
pub fn longitude_series<C: Coefficient>(
    p: &WirtingerPresentation,
    q: usize,
    guards: &Guards,
) -> Result<Vec<TruncatedSeries<C>>> {
    if q < 2 {
        return Err(Error::InvalidArgument(
            "longitudes are expanded at level 2 or more".into(),
        ));
    }
    let n = p.n_components();
    let images = meridian_series::<C>(p, q, guards)?;
    let cap = q - 1;
    (1..=n)
        .into_par_iter()
        .map(|i| {
            let mut v = TruncatedSeries::one(n, cap)?;
            for step in p.walk(i)? {
                if let Some((o, s)) = step.under {
                    let (a, b) = &images[o as usize - 1];
                    let f = if s > 0 { a } else { b };
                    v = guard(f.with_cap(cap)?.multiply(&v)?, guards)?;
                }
            }
            let w = p.writhe(i)?;
            let fix = Letter::from_signed(i as u32, if w > 0 { -1 } else { 1 });
            for _ in 0..w.unsigned_abs() {
                v = v.mul_letter(fix)?;
            }
            Ok(v)
        })
        .collect()
}

fn guard<C: Coefficient>(s: TruncatedSeries<C>, guards: &Guards) -> Result<TruncatedSeries<C>> {
    if s.term_count() > guards.max_terms {
        return Err(Error::Resource {
            what: "series terms",
            size: s.term_count(),
            limit: guards.max_terms,
        });
    }
    Ok(s)
}

/// A series and its inverse.
pub type SeriesPair<C> = (TruncatedSeries<C>, TruncatedSeries<C>);

fn series_round<C: Coefficient>(
    p: &WirtingerPresentation,
    i: usize,
    old: &[SeriesPair<C>],
    cap: usize,
    guards: &Guards,
) -> Result<Vec<(u32, SeriesPair<C>)>> {
    let walk = p.walk(i)?;
    let n = p.n_components();
    let x = Letter::from_signed(i as u32, 1);
    let mut v = TruncatedSeries::one(n, cap)?;
    let mut v_inv = v.clone();
    let mut image = (
        TruncatedSeries::generator(n, cap, i)?,
        TruncatedSeries::generator_inverse(n, cap, i)?,
    );
    let mut out = Vec::with_capacity(walk.len());
    out.push((walk[0].generator, image.clone()));
    for k in 0..walk.len() - 1 {
        if let Some((o, s)) = walk[k].under {
            let (a, b) = &old[o as usize - 1];
            let (f, f_inv) = if s > 0 { (a, b) } else { (b, a) };
            v = guard(f.multiply(&v)?, guards)?;
            v_inv = guard(v_inv.multiply(f_inv)?, guards)?;
            // 1 + v (M(x^±1) - 1) v^-1, so that v v^-1 = 1 need only hold
            // in the weights this round can trust
            let one = TruncatedSeries::one(n, cap)?;
            image = (
                guard(
                    one.add(&v.mul_letter(x)?.sub(&v)?.multiply(&v_inv)?)?,
                    guards,
                )?,
                guard(
                    one.add(&v.mul_letter(x.inverse())?.sub(&v)?.multiply(&v_inv)?)?,
                    guards,
                )?,
            );
        }
        out.push((walk[k + 1].generator, image.clone()));
    }
    Ok(out)
}
