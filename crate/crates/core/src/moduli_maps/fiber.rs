//! Exhaustive fiber counts of polynomial maps `P^k -> P^m` over `F_p`.

use std::collections::HashMap;

use rand::Rng as _;
use rayon::prelude::*;

use crate::algebra::random::seeded;
use crate::algebra::{MultiPoly, PrimeField, Ring};
use crate::{Error, Result};

/// A map of projective spaces given by homogeneous polynomials of equal
/// degree, reduced modulo `p` and compiled for fast evaluation.
#[derive(Clone, Debug)]
pub struct ModMap {
    field: PrimeField,
    source_coords: usize,
    /// per component: (coefficient, exponent vector)
    components: Vec<Vec<(u64, Vec<u16>)>>,
}

impl ModMap {
    /// `polys` are rational polynomials in exactly `source_coords` variables.
    pub fn new(p: u64, source_coords: usize, polys: &[MultiPoly]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if p >= 1 << 16 {
            return Err(Error::OutOfRange(format!("prime {p} too large for exhaustive counting")));
        }
        if polys.len() > 8 {
            return Err(Error::OutOfRange("target dimension above 7".into()));
        }
        let mut components = Vec::with_capacity(polys.len());
        for poly in polys {
            if poly.nvars() != source_coords {
                return Err(Error::SpaceMismatch(format!(
                    "component over {} variables, expected {source_coords}",
                    poly.nvars()
                )));
            }
            let reduced = poly.reduce_mod(field)?;
            components.push(reduced.terms().map(|(m, c)| (*c, m.0.clone())).collect());
        }
        Ok(ModMap { field, source_coords, components })
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn source_coords(&self) -> usize {
        self.source_coords
    }

    pub fn target_coords(&self) -> usize {
        self.components.len()
    }

    /// Raw image of a point (not normalized).
    pub fn eval(&self, pt: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let maxdeg = self
            .components
            .iter()
            .flat_map(|c| c.iter().flat_map(|(_, e)| e.iter().copied()))
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<u64>> = pt
            .iter()
            .map(|&x| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1u64;
                for _ in 0..=maxdeg {
                    v.push(acc);
                    acc = f.mul(&acc, &x);
                }
                v
            })
            .collect();
        self.components
            .iter()
            .map(|terms| {
                terms.iter().fold(0u64, |acc, (c, e)| {
                    let t = e
                        .iter()
                        .enumerate()
                        .fold(*c, |t, (i, &k)| f.mul(&t, &powers[i][k as usize]));
                    f.add(&acc, &t)
                })
            })
            .collect()
    }

    /// Normalized image, or `None` at a point of indeterminacy.
    pub fn image(&self, pt: &[u64]) -> Option<Vec<u64>> {
        normalize(&self.field, self.eval(pt))
    }
}

/// Scales so that the first nonzero coordinate is one.
pub fn normalize(field: &PrimeField, mut v: Vec<u64>) -> Option<Vec<u64>> {
    let first = v.iter().copied().find(|&x| x != 0)?;
    let inv = field.inv(&first).expect("nonzero");
    for x in v.iter_mut() {
        *x = field.mul(x, &inv);
    }
    Some(v)
}

fn pack(v: &[u64]) -> u128 {
    v.iter().fold(0u128, |acc, &x| (acc << 16) | x as u128)
}

/// The `index`-th point of `P^(n-1)(F_p)` in normalized form.
fn point_at(p: u64, n: usize, mut index: u64) -> Vec<u64> {
    // points with leading one in position k number p^(n-1-k)
    let mut pt = vec![0u64; n];
    for k in 0..n {
        let block = p.pow((n - 1 - k) as u32);
        if index < block {
            pt[k] = 1;
            for j in (k + 1..n).rev() {
                pt[j] = index % p;
                index /= p;
            }
            return pt;
        }
        index -= block;
    }
    unreachable!("index within the point count")
}

/// Number of points of `P^(n-1)(F_p)`.
pub fn projective_point_count(p: u64, n: usize) -> u64 {
    (0..n).map(|k| p.pow(k as u32)).sum()
}

/// Image histogram of a map over all source points.
#[derive(Clone, Debug, Default)]
pub struct FiberTable {
    counts: HashMap<u128, u32>,
    pub indeterminate: u64,
    pub total: u64,
}

impl FiberTable {
    pub fn fiber(&self, target: &[u64]) -> u32 {
        self.counts.get(&pack(target)).copied().unwrap_or(0)
    }

    pub fn max_fiber(&self) -> u32 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn image_size(&self) -> usize {
        self.counts.len()
    }

    /// Sum over all image points of the fiber sizes.
    pub fn counted(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }
}

/// Enumerates every point of the source once, in parallel, and tallies images.
pub fn fiber_table(map: &ModMap) -> FiberTable {
    let p = map.prime();
    let n = map.source_coords;
    let total = projective_point_count(p, n);
    let chunk = 4096u64;
    let nchunks = total.div_ceil(chunk);
    let partials: Vec<FiberTable> = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let mut t = FiberTable::default();
            for idx in c * chunk..((c + 1) * chunk).min(total) {
                let pt = point_at(p, n, idx);
                t.total += 1;
                match map.image(&pt) {
                    Some(img) => *t.counts.entry(pack(&img)).or_insert(0) += 1,
                    None => t.indeterminate += 1,
                }
            }
            t
        })
        .collect();
    let mut out = FiberTable::default();
    for t in partials {
        out.total += t.total;
        out.indeterminate += t.indeterminate;
        for (k, v) in t.counts {
            *out.counts.entry(k).or_insert(0) += v;
        }
    }
    out
}

/// Size of the fiber of `map` over `target`.
pub fn fiber_count(map: &ModMap, target: &[u64]) -> Result<u32> {
    if target.len() != map.target_coords() {
        return Err(Error::SpaceMismatch("target dimension".into()));
    }
    let t = normalize(&map.field, target.to_vec())
        .ok_or_else(|| Error::Degenerate("zero target".into()))?;
    Ok(fiber_table(map).fiber(&t))
}

#[derive(Clone, Debug)]
pub struct FiberSample {
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    pub fiber: u32,
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub prime: u64,
    pub samples: Vec<FiberSample>,
    pub max_fiber: u32,
    pub indeterminate: u64,
    pub total: u64,
}

impl FiberReport {
    pub fn fraction_with_fiber(&self, n: u32) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().filter(|s| s.fiber == n).count() as f64 / self.samples.len() as f64
    }

    /// Lines `target=<coords> fiber=<n>` and a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            let coords: Vec<String> = s.target.iter().map(u64::to_string).collect();
            out.push_str(&format!("target=[{}] fiber={}\n", coords.join(","), s.fiber));
        }
        out.push_str(&format!("max_fiber={} indeterminate={}\n", self.max_fiber, self.indeterminate));
        out
    }
}

/// Samples random source points outside the indeterminacy locus and reports
/// the fiber size over each image, plus the maximum fiber over the whole
/// source and the number of indeterminacy points.
pub fn sample_fibers(map: &ModMap, samples: usize, seed: u64) -> FiberReport {
    let table = fiber_table(map);
    let mut rng = seeded(seed);
    let p = map.prime();
    let n = map.source_coords;
    let total = projective_point_count(p, n);
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0;
    while out.len() < samples && attempts < samples * 100 + 1000 {
        attempts += 1;
        let pt = point_at(p, n, rng.gen_range(0..total));
        if let Some(img) = map.image(&pt) {
            let fiber = table.fiber(&img);
            out.push(FiberSample { source: pt, target: img, fiber });
        }
    }
    FiberReport {
        prime: p,
        samples: out,
        max_fiber: table.max_fiber(),
        indeterminate: table.indeterminate,
        total: table.total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli_maps::{hesse_self_map, RationalMapP1};

    #[test]
    fn enumeration_covers_projective_space() {
        let p = 5;
        let mut seen = std::collections::HashSet::new();
        for i in 0..projective_point_count(p, 3) {
            seen.insert(point_at(p, 3, i));
        }
        assert_eq!(seen.len(), 31);
    }

    #[test]
    fn identity_fibers_are_points() {
        let m = RationalMapP1::identity().reduce_mod(101).unwrap();
        let t = fiber_table(&m);
        assert_eq!(t.max_fiber(), 1);
        assert_eq!(fiber_count(&m, &[3, 7]).unwrap(), 1);
        assert_eq!(t.counted() + t.indeterminate, t.total);
    }

    #[test]
    fn hesse_self_map_max_fiber() {
        let m = hesse_self_map().unwrap().reduce_mod(101).unwrap();
        let r = sample_fibers(&m, 10, 1);
        assert_eq!(r.max_fiber, 3);
        assert_eq!(r.indeterminate, 0);
    }
}
