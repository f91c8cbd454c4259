//! Certified ranks of algebra elements viewed as `v x v` matrices.
//!
//! Lower bounds come from reducing modulo primes `l = 1 (mod M)` and eliminating
//! a random right sketch `E R`, which can only lose rank. Diagonal units are
//! orthogonal idempotents summing to `I`, so once their lower bounds sum to `v`
//! each bound is exact. An off-diagonal unit satisfies `E_ij = E_ii E_ij`, so its
//! rank is at most that of `E_ii` and is certified when the lower bound meets it.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::AlgElem;
use crate::algebra::modp::{rank_mod, ModularEmbedding};
use crate::error::SpectraError;
use crate::schemes::AssociationScheme;

const ATTEMPTS: usize = 4;

/// A unit to be ranked: `diag` is the index of its diagonal partner (itself if diagonal).
pub struct RankJob<'a> {
    pub name: String,
    pub elem: &'a AlgElem,
    pub diag: usize,
    pub hint: usize,
}

fn field_data(jobs: &[RankJob<'_>]) -> (u32, Option<u64>) {
    let mut m = 1u32;
    let mut rad = None;
    for j in jobs {
        for c in j.elem.coeffs() {
            m = m.lcm(&c.conductor());
            if let Some(n) = c.radicand() {
                rad = Some(n);
            }
        }
    }
    (m, rad)
}

/// Lower bound for the rank of each job, all sharing one sketch.
fn lower_bounds(s: &AssociationScheme, jobs: &[RankJob<'_>], width: usize, attempt: usize) -> Option<Vec<usize>> {
    let (m, rad) = field_data(jobs);
    let emb = ModularEmbedding::find(m, rad, attempt);
    let ell = emb.prime();
    let v = s.vertices();
    let r = s.rank();
    let w = width.min(v).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt as u64);
    let sketch: Vec<u64> = (0..v * w).map(|_| rng.gen_range(0..ell)).collect();
    // sums[x][l][c] = sum over y with rel(x,y) = l of sketch[y][c]
    let rel = s.relation_table();
    let mut sums = vec![0u64; v * r * w];
    for x in 0..v {
        let base = x * r * w;
        for y in 0..v {
            let l = rel[x * v + y] as usize;
            let dst = &mut sums[base + l * w..base + (l + 1) * w];
            for (d, sv) in dst.iter_mut().zip(&sketch[y * w..(y + 1) * w]) {
                *d += sv;
            }
        }
        for d in &mut sums[base..base + r * w] {
            *d %= ell;
        }
    }
    let mut out = Vec::with_capacity(jobs.len());
    let mut buf = vec![0u64; v * w];
    for job in jobs {
        let coeffs: Vec<u64> = job.elem.coeffs().iter().map(|c| emb.reduce(c)).collect::<Option<_>>()?;
        for x in 0..v {
            let row = &mut buf[x * w..(x + 1) * w];
            row.iter_mut().for_each(|t| *t = 0);
            for (l, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let src = &sums[x * r * w + l * w..x * r * w + (l + 1) * w];
                for (t, &sv) in row.iter_mut().zip(src) {
                    *t = (*t + c * sv) % ell;
                }
            }
        }
        out.push(rank_mod(&mut buf, v, w, ell));
    }
    Some(out)
}

/// Exact ranks for every job, or `RankUncertified`.
pub fn certified_ranks(s: &AssociationScheme, jobs: &[RankJob<'_>]) -> Result<Vec<usize>, SpectraError> {
    let v = s.vertices();
    let mut best = vec![0usize; jobs.len()];
    let hint_width = jobs.iter().map(|j| j.hint).max().unwrap_or(1) + 8;
    for attempt in 0..ATTEMPTS {
        let width = if attempt < ATTEMPTS / 2 { hint_width } else { v };
        let Some(lb) = lower_bounds(s, jobs, width, attempt) else { continue };
        for (b, l) in best.iter_mut().zip(lb) {
            *b = (*b).max(l);
        }
        let diag_sum: usize = jobs.iter().enumerate().filter(|(i, j)| j.diag == *i).map(|(i, _)| best[i]).sum();
        let offdiag_ok = jobs.iter().enumerate().all(|(i, j)| best[i] >= best[j.diag]);
        if diag_sum == v && offdiag_ok {
            return Ok(best);
        }
    }
    let bad = jobs
        .iter()
        .enumerate()
        .find(|(i, j)| j.diag != *i && best[*i] < best[j.diag])
        .or_else(|| jobs.iter().enumerate().find(|(i, j)| j.diag == *i))
        .unwrap();
    Err(SpectraError::RankUncertified { unit: bad.1.name.clone(), lower: best[bad.0], upper: best[bad.1.diag].max(v) })
}
