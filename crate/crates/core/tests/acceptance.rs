//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcompact::arith::modular::is_prime;
use pcompact::arith::{embed_matrices, CycMatrix, MatrixKey};
use pcompact::catalog::CatalogEntry;
use pcompact::hocolim::{adjoint_homology, sphere_diagram, PosetDiagram, SphereVerdict};
use pcompact::model::{build_model, centralizer_structure, flag_poincare, PCompactModel};
use pcompact::reflection::{close_group, min_generating_reflections, molien_degrees, GroupError, ReflectionGroup};
use pcompact::splitting::{verify_framing_obstruction, GradedOperator, PsiAlgebra};
use pcompact::GradedRanks;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn catalog_model(entry: CatalogEntry) -> Result<PCompactModel, String> {
    let p = entry.default_prime();
    let group = close_group(&entry.generators(Some(p)).map_err(|e| e.to_string())?, entry.cap(Some(p)))
        .map_err(|e| e.to_string())?;
    build_model(group, p).map_err(|e| format!("{}: {e}", entry.name()))
}

/// Plain queue closure keyed by exact matrix fingerprints.
fn bfs_order(gens: &[CycMatrix]) -> usize {
    let identity = CycMatrix::identity(gens[0].field(), gens[0].rank());
    let mut seen: HashSet<MatrixKey> = HashSet::from([identity.key()]);
    let mut queue = vec![identity];
    while let Some(m) = queue.pop() {
        for g in gens {
            let next = m.mul(g);
            if seen.insert(next.key()) {
                queue.push(next);
            }
        }
    }
    seen.len()
}

/// Orders of the subgroups generated by every pair of reflections, from a
/// right-multiplication table.
fn pair_closure_orders(g: &ReflectionGroup) -> Vec<usize> {
    let index: HashMap<MatrixKey, usize> = g.elements().iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
    let table: Vec<Vec<usize>> = g
        .reflections()
        .iter()
        .map(|r| {
            let s = g.element(r.element);
            g.elements().iter().map(|w| index[&w.mul(s).key()]).collect()
        })
        .collect();
    let n = table.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut member = vec![false; g.order()];
            member[0] = true;
            let mut stack = vec![0];
            while let Some(e) = stack.pop() {
                for r in [a, b] {
                    let next = table[r][e];
                    if !member[next] {
                        member[next] = true;
                        stack.push(next);
                    }
                }
            }
            out.push(member.iter().filter(|&&x| x).count());
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let gens = CatalogEntry::G7.generators(None).map_err(|e| e.to_string())?;
    let g = close_group(&gens, 1000).map_err(|e| e.to_string())?;
    ensure!(g.order() == 144, "closure order {}", g.order());
    ensure!(bfs_order(&gens) == 144, "oracle closure order {}", bfs_order(&gens));
    let pairs = pair_closure_orders(&g);
    ensure!(pairs.iter().all(|&o| o < 144), "some pair of reflections generates G7");
    let minimal = min_generating_reflections(&g, 4).map_err(|e| e.to_string())?;
    ensure!(minimal.len() == 3, "r' = {}", minimal.len());
    ensure!(
        min_generating_reflections(&g, 2) == Err(GroupError::BoundExceeded(2)),
        "search with bound 2 did not fail"
    );
    ensure!(embed_matrices(&gens, 13, 8).is_ok(), "no embedding at p = 13");
    ensure!(embed_matrices(&gens, 7, 8).is_err(), "unexpected embedding at p = 7");
    let degrees = molien_degrees(&g).map_err(|e| e.to_string())?;
    ensure!(degrees == [12, 12], "degrees {degrees:?}");
    ensure!(degrees.iter().product::<u32>() == 144, "degree product");
    Ok(format!("|W| = 144, r' = 3 ({} pairs checked), p=13 embeds, p=7 fails, degrees {{12, 12}}", pairs.len()))
}

fn criterion_2() -> Outcome {
    let p = 5;
    let m = catalog_model(CatalogEntry::Sullivan)?;
    ensure!(m.prime == p, "default prime {}", m.prime);
    ensure!(m.dimension == 2 * p - 3, "d = {}", m.dimension);
    let flag = flag_poincare(&m, &[]).map_err(|e| e.to_string())?;
    ensure!(flag.coeffs() == [1, 0, 1, 0, 1, 0, 1], "flag polynomial {flag}");
    let a = adjoint_homology(&m).map_err(|e| e.to_string())?;
    let expected = GradedRanks::from_pairs([(3, 1), (5, 1), (7, 1)]);
    ensure!(a.reduced_ranks.as_ref() == Some(&expected), "adjoint ranks {:?}", a.reduced_ranks);
    ensure!(a.verdict == SphereVerdict::NotSphere, "verdict {}", a.verdict.as_str());
    Ok(format!("d = 7, flag {flag}, adjoint ranks in {{3, 5, 7}}, verdict \"{}\"", a.verdict.as_str()))
}

fn criterion_3() -> Outcome {
    for p in [5u64, 7, 13] {
        let n = 3 * (p as usize - 1);
        let alg = PsiAlgebra::new(p, 8, n).map_err(|e| e.to_string())?;
        let ring = alg.ring();
        let es: Vec<GradedOperator> = (0..p - 1).map(|s| alg.idempotent_e(s).unwrap()).collect();
        let mut total = GradedOperator::zero(ring, n);
        for (s, e) in es.iter().enumerate() {
            ensure!(e.is_idempotent(), "p={p}: e_{s} not idempotent");
            ensure!(*e == alg.residue_indicator(s as u64), "p={p}: e_{s} differs from its indicator");
            for (t, f) in es.iter().enumerate() {
                ensure!(s == t || e.compose(f).is_zero(), "p={p}: e_{s} e_{t} != 0");
            }
            total = total.add(e);
        }
        ensure!(total == GradedOperator::identity(ring, n), "p={p}: idempotents do not sum to 1");
        for l in (2..p).filter(|l| (p - 1) % l == 0) {
            let bg = alg.transfer_image_bg(l).map_err(|e| e.to_string())?;
            ensure!(bg.residues.iter().all(|s| s % l == 0), "p={p} l={l}: BG residues");
            ensure!(bg.operator.support().iter().all(|&j| j as u64 % l == 0), "p={p} l={l}: BG support");
            let f = alg.transfer_image_umkehr(l).map_err(|e| e.to_string())?;
            ensure!(f.residues.iter().all(|s| (s + 1) % l == 0), "p={p} l={l}: Umkehr residues");
            ensure!(
                f.operator.support().iter().all(|&j| (j as u64 + 1) % l == 0),
                "p={p} l={l}: Umkehr support"
            );
        }
    }
    let mut pairs = 0;
    for p in (3u64..=200).filter(|&p| is_prime(p)) {
        let alg = PsiAlgebra::new(p, 8, 3 * (p as usize - 1)).map_err(|e| e.to_string())?;
        for l in (3..p).filter(|l| (p - 1) % l == 0) {
            ensure!(verify_framing_obstruction(&alg, l) == Ok(true), "framing obstruction fails at p={p} l={l}");
            pairs += 1;
        }
    }
    Ok(format!("p in {{5, 7, 13}} exact at k = 8; framing obstruction holds for all {pairs} pairs with p <= 200"))
}

fn random_diagram(rng: &mut ChaCha8Rng) -> (PosetDiagram, usize, usize) {
    let k = rng.gen_range(1..=5);
    let n = rng.gen_range(1..=12);
    let diagram = PosetDiagram::from_fn(k, |mask| {
        let top = if mask == 0 { n } else { rng_degree(mask, n) };
        let mut ranks = GradedRanks::from_pairs([(top, 1 + (mask as u64 * 7 + n as u64) % 3)]);
        for d in 0..top {
            ranks.add(d, (mask as u64 + d as u64 * 5 + n as u64) % 3);
        }
        ranks
    })
    .unwrap();
    (diagram, k, n)
}

/// A top degree below n for the nonempty subsets, varying with the mask.
fn rng_degree(mask: u32, n: usize) -> usize {
    (mask as usize * 2654435761) % n
}

fn criterion_4() -> Outcome {
    for n in 1..=10 {
        for r in 1..=5 {
            let d = sphere_diagram(n, r, true).map_err(|e| e.to_string())?;
            ensure!(d.hocolim_dim() == Ok(n + r - 1), "sphere n={n} r={r}: dim");
            ensure!(d.top_rank() == Ok(1), "sphere n={n} r={r}: top rank");
            let e2 = d.e2_page().map_err(|e| e.to_string())?;
            ensure!(e2.total_ranks() == GradedRanks::sphere(n + r - 1), "sphere n={n} r={r}: E2 {e2:?}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..100 {
        let (d, k, n) = random_diagram(&mut rng);
        ensure!(d.hocolim_dim() == Ok(n + k - 1), "random diagram {i}: {:?}", d.hocolim_dim());
        ensure!(d.e1_page().euler_characteristic() == d.euler_from_diagram(), "random diagram {i}: euler");
    }
    let mut names = Vec::new();
    for entry in CatalogEntry::list() {
        let m = catalog_model(entry)?;
        let a = adjoint_homology(&m).map_err(|e| e.to_string())?;
        ensure!(a.hocolim_dim + m.kappa == m.dimension as usize, "{}: hocolim dim {}", entry.name(), a.hocolim_dim);
        ensure!(a.dimension == m.dimension as usize, "{}: dim A_G = {}", entry.name(), a.dimension);
        ensure!(a.top_rank == 1, "{}: top rank {}", entry.name(), a.top_rank);
        names.push(entry.name());
    }
    Ok(format!("50 sphere diagrams, 100 random diagrams, dim A_G = d with top rank 1 for {}", names.join(", ")))
}

fn criterion_5() -> Outcome {
    for n in 2u32..=4 {
        let m = catalog_model(CatalogEntry::Symmetric(n))?;
        ensure!(m.dimension == u64::from(n * n - 1), "S{n}: d = {}", m.dimension);
    }
    let mut checked = 0;
    for entry in CatalogEntry::list() {
        let m = catalog_model(entry)?;
        let chi = flag_poincare(&m, &[]).map_err(|e| e.to_string())?.eval_one();
        ensure!(chi == m.weyl.order() as u64, "{}: flag Euler characteristic {chi}", entry.name());
        let r = m.rank();
        for (i, s) in m.weyl.reflections().iter().enumerate().filter(|(_, s)| s.primitive) {
            let c = centralizer_structure(&m, i).map_err(|e| e.to_string())?;
            let mut expected = vec![1u32; r - 1];
            expected.push(s.order as u32);
            expected.sort_unstable();
            ensure!(c.degrees == expected, "{}: reflection {i} degrees {:?}", entry.name(), c.degrees);
            checked += 1;
        }
    }
    Ok(format!("d = n^2 - 1 for S2..S4, Euler = |W| for every catalog model, {checked} primitive centralizers"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 5] = [
        ("G7 suite", Duration::from_secs(10), criterion_1),
        ("Sullivan suite", Duration::from_secs(1), criterion_2),
        ("splitting suite", Duration::from_secs(30), criterion_3),
        ("hocolim suite", Duration::from_secs(10), criterion_4),
        ("Lie cross-checks", Duration::from_secs(10), criterion_5),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {} ({name}) in {elapsed:.2?}: {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {} ({name}) in {elapsed:.2?}: {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
