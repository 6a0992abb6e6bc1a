//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `DAGZP_EXTENDED=1` to include the n=8 weighted census.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use dagzp::census::{
    census, census_union, connected_dag_count, connected_dag_from_mask, enumerate_connected_dags,
    weighted_census, CensusConfig,
};
use dagzp::exact::determinant_exact;
use dagzp::spectral::frequency;
use dagzp::{
    apply_vertex_domain, eigendecompose, filter_via_zero_padding, zero_pad_connected,
    zero_pad_general, Dag, Digraph, Edge, Error, FilterCoeffs, Matrix, PadOptions, SpectralConfig,
};
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn extended() -> bool {
    std::env::var("DAGZP_EXTENDED").is_ok_and(|v| v != "0" && !v.is_empty())
}

fn cfg() -> CensusConfig {
    CensusConfig::default()
}

fn one() -> Rational64 {
    Rational64::one()
}

fn row_outcome(n: usize, zp: usize, total: u64, distinct: u64, repeated: u64) -> Outcome {
    let r = census(n, zp, one(), &cfg()).map_err(|e| e.to_string())?.row;
    check(
        (r.total, r.distinct, r.repeated) == (total, distinct, repeated),
        format!(
            "n={n} zp={zp}: total={} distinct={} repeated={}",
            r.total, r.distinct, r.repeated
        ),
    )
}

fn criterion_1() -> Outcome {
    row_outcome(7, 0, 32_768, 32_250, 518)
}

fn criterion_2() -> Outcome {
    row_outcome(7, 1, 32_768, 32_758, 10)
}

fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (zp, distinct) in [(0, 2_075_682), (1, 2_088_106), (2, 2_095_224)] {
        match row_outcome(8, zp, 2_097_152, distinct, 2_097_152 - distinct) {
            Ok(d) => details.push(d),
            Err(d) => {
                ok = false;
                details.push(d)
            }
        }
    }
    check(ok, details.join("; "))
}

fn criterion_4() -> Outcome {
    let u = census_union(7, &cfg()).map_err(|e| e.to_string())?;
    check(
        u.unresolved == 0 && u.resolved_by_1zp == 518 && u.lost_by_1zp == 10,
        format!(
            "unresolved={} resolved_by_1zp={} lost_by_1zp={}",
            u.unresolved, u.resolved_by_1zp, u.lost_by_1zp
        ),
    )
}

fn criterion_5() -> Outcome {
    let half = Rational64::new(1, 2);
    let mut sizes = vec![7];
    if extended() {
        sizes.push(8);
    }
    let mut details = Vec::new();
    let mut ok = true;
    for n in sizes {
        let r = weighted_census(n, half, &cfg())
            .map_err(|e| e.to_string())?
            .row;
        ok &= r.repeated == 0;
        details.push(format!("n={n} w=1/2: repeated={}", r.repeated));
    }
    if !extended() {
        details.push("n=8 skipped (set DAGZP_EXTENDED=1)".into());
    }
    check(ok, details.join("; "))
}

fn criterion_6() -> Outcome {
    let path: Vec<(usize, usize)> = (1..8).map(|i| (i, i + 1)).collect();
    let d = Dag::<f64>::unweighted(8, &path).unwrap();
    let p = zero_pad_connected(&d, 2, &PadOptions::default()).map_err(|e| e.to_string())?;
    let dec = eigendecompose(&p.graph().adjacency_matrix(), &SpectralConfig::default())
        .map_err(|e| e.to_string())?;
    let mut want: Vec<Complex64> = (0..10)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 10.0))
        .collect();
    want.sort_by(|a, b| frequency(*a).partial_cmp(&frequency(*b)).unwrap());
    let err = dec
        .eigenvalues()
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    check(err <= 1e-9, format!("max eigenvalue error {err:.2e}"))
}

fn criterion_7() -> Outcome {
    let unit = |a: &Matrix<f64>| {
        determinant_exact(a)
            .map(|d| d.abs() == BigRational::one())
            .unwrap_or(false)
    };
    let mut checked = 0usize;
    for n in 1..=6 {
        let graphs: Vec<Dag<f64>> = if n == 1 {
            vec![Dag::unweighted(1, &[]).unwrap()]
        } else {
            (0..connected_dag_count(n))
                .map(|m| connected_dag_from_mask(n, m))
                .collect()
        };
        for d in graphs {
            for m in 0..=5 {
                let p = zero_pad_connected(&d, m, &PadOptions::default()).unwrap();
                if !unit(&p.graph().adjacency_matrix()) {
                    return Err(format!("n={n} M={m}: {:?}", d.edges()));
                }
                checked += 1;
            }
        }
    }
    let mut rng = common::rng(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=20);
        let m = rng.gen_range(0..=5);
        let d = common::random_connected_dag(&mut rng, n);
        let p = zero_pad_connected(&d, m, &PadOptions::default()).unwrap();
        if !unit(&p.graph().adjacency_matrix()) {
            return Err(format!("random n={n} M={m}: {:?}", d.edges()));
        }
    }
    Ok(format!(
        "{checked} exhaustive cases and 1000 random cases have det = +1 or -1"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let (mut passed, mut retried, mut worst) = (0, 0, 0.0f64);
    for case in 0..200 {
        let n = rng.gen_range(1..=30);
        let p = rng.gen_range(0.05..0.5);
        let d = common::random_dag(&mut rng, n, p);
        let s = rng.gen_range(0..=4);
        let h = FilterCoeffs::new((0..=s).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let x = common::random_signal(&mut rng, n);
        let want = apply_vertex_domain(&d, &h, &x).unwrap();
        let mut result = None;
        for m in s..=s + 2 {
            match filter_via_zero_padding(&d, &h, &x, m) {
                Ok(y) => {
                    result = Some(y);
                    break;
                }
                Err(Error::NotDiagonalizable { .. }) => retried += 1,
                Err(e) => return Err(format!("case {case}: {e}")),
            }
        }
        if let Some(y) = result {
            let dev = common::max_abs_diff(&y, &want);
            worst = worst.max(dev);
            if dev <= 1e-8 {
                passed += 1;
            }
        }
    }
    check(
        passed == 200,
        format!("{passed}/200 within 1e-8 (max deviation {worst:.2e}, {retried} retries)"),
    )
}

fn criterion_9() -> Outcome {
    let d = common::worked_example();
    let a = d.adjacency_matrix();
    #[rustfmt::skip]
    let rows_a: [[u8; 8]; 8] = [
        [0, 1, 1, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 1, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0, 0, 0],
    ];
    let golden_a = Matrix::from_fn(8, 8, |i, j| rows_a[i][j] as f64);
    let golden_zp = Matrix::from_fn(10, 10, |i, j| match (i, j) {
        (i, j) if i < 8 && j < 8 => rows_a[i][j] as f64,
        (7, 8) | (8, 9) | (9, 0) => 1.0,
        _ => 0.0,
    });
    let zp = zero_pad_connected(&d, 2, &PadOptions::default())
        .unwrap()
        .graph()
        .adjacency_matrix();
    let nil = common::disconnected_example().nilpotency_index();
    check(
        a == golden_a && zp == golden_zp && nil == 5,
        format!(
            "8x8 match {}, 10x10 match {}, nilpotency index {nil}",
            a == golden_a,
            zp == golden_zp
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut notes = Vec::new();

    // GFT/IGFT round trip and linearity on padded graphs up to 50 vertices
    let mut rng = common::rng(10);
    let (mut worst_rt, mut worst_lin, mut cases) = (0.0f64, 0.0f64, 0);
    while cases < 100 {
        let n = rng.gen_range(2..=40);
        let m = rng.gen_range(1..=4);
        let density = rng.gen_range(0.05..0.5);
        let d = common::random_dag(&mut rng, n, density);
        let p = zero_pad_general(&d, m, &PadOptions::default()).unwrap();
        if p.n() > 50 {
            continue;
        }
        let Ok(dec) = eigendecompose(&p.graph().adjacency_matrix(), &SpectralConfig::default())
        else {
            continue;
        };
        cases += 1;
        let x = common::random_signal(&mut rng, p.n());
        let y = common::random_signal(&mut rng, p.n());
        let back = dec.igft(&dec.gft(&x).unwrap()).unwrap();
        worst_rt = back
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).norm())
            .fold(worst_rt, f64::max);
        let (al, be) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let z: Vec<f64> = x.iter().zip(&y).map(|(p, q)| al * p + be * q).collect();
        let (gx, gy, gz) = (
            dec.gft(&x).unwrap(),
            dec.gft(&y).unwrap(),
            dec.gft(&z).unwrap(),
        );
        for k in 0..p.n() {
            worst_lin = worst_lin.max((gz[k] - (gx[k] * al + gy[k] * be)).norm());
        }
    }
    notes.push(format!(
        "round trip {worst_rt:.1e}, linearity {worst_lin:.1e}"
    ));
    let spectral_ok = worst_rt <= 1e-9 && worst_lin <= 1e-9;

    // shift trapping, exhaustive over connected DAGs n <= 5 and M <= 4
    let mut trapping_ok = true;
    for n in 2..=5 {
        for mask in 0..connected_dag_count(n) {
            let d: Dag<f64> = connected_dag_from_mask(n, mask);
            let a = d.adjacency_matrix();
            for big_m in 0..=4 {
                let p = zero_pad_connected(&d, big_m, &PadOptions::default()).unwrap();
                let azp = p.graph().adjacency_matrix();
                for m in 0..=big_m {
                    let pw = azp.pow(m);
                    trapping_ok &= Matrix::from_fn(n, n, |i, j| pw[(i, j)]) == a.pow(m);
                }
            }
        }
    }
    notes.push(format!("shift trapping {trapping_ok}"));

    // enumeration count for n <= 9; every graph is materialised up to n = 8
    let mut count_ok = true;
    for n in 2..=9 {
        let want = 1u64 << ((n * n + 2 - 3 * n) / 2);
        let listed = enumerate_connected_dags::<f64>(n, 9).unwrap();
        count_ok &= listed.len() as u64 == want;
        if n <= 8 {
            count_ok &= listed.filter(|d| d.is_connected()).count() as u64 == want;
        }
    }
    notes.push(format!("enumeration counts {count_ok}"));

    // enumeration equals brute force over labelled DAGs for n <= 5
    let mut brute_ok = true;
    for n in 2..=5 {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let mut brute = BTreeSet::new();
        for subset in 0u64..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| subset >> b & 1 == 1)
                .map(|(_, &(u, v))| Edge::new(u, v, 1.0));
            let Ok(d) = Digraph::new(n, edges).and_then(Dag::from_digraph) else {
                continue;
            };
            if d.is_connected() {
                let canon = d.renumber_by_hamiltonian().unwrap().0;
                brute.insert(
                    canon
                        .edges()
                        .iter()
                        .map(|e| e.endpoints())
                        .collect::<Vec<_>>(),
                );
            }
        }
        let listed: BTreeSet<Vec<(usize, usize)>> = enumerate_connected_dags::<f64>(n, 9)
            .unwrap()
            .map(|d| d.edges().iter().map(|e| e.endpoints()).collect())
            .collect();
        brute_ok &= brute == listed;
    }
    notes.push(format!("brute-force set equality {brute_ok}"));

    check(
        spectral_ok && trapping_ok && count_ok && brute_ok,
        notes.join(", "),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "census n=7, return edge", criterion_1),
        (2, "census n=7, one padding vertex", criterion_2),
        (3, "census n=8, zp = 0, 1, 2", criterion_3),
        (4, "union breakdown n=7", criterion_4),
        (5, "weighted return edge w=1/2", criterion_5),
        (6, "padded path spectrum", criterion_6),
        (7, "unit determinant", criterion_7),
        (8, "zero-padded filtering equivalence", criterion_8),
        (9, "golden matrices and nilpotency index", criterion_9),
        (10, "property suites", criterion_10),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} ({name}): FAIL [{secs:.1}s] {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
