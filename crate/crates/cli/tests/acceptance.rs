//! Acceptance suite. Run with
//! `cargo test -p hyperkit-cli --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use hyperkit::amen::{amenability_constant, hp_amenability_formula, idempotency_residual};
use hyperkit::builders::{conjugacy_hypergroup, group_hypergroup, hp, is_subhypergroup, join, quotient, subhypergroups, CayleyTable};
use hyperkit::hypergroup::{convolve, convolve_l1, validate};
use hyperkit::spectra::{
    characters, dual_hypergroup, minimal_idempotents, parseval_defect, round_trip_defect, verify_join_dual,
    verify_quotient_dual, JoinOperand,
};
use hyperkit::uncertainty::uncertainty_check;
use hyperkit::{CharacterTable, Complex, DualResult, FloatHypergroup, HFunction, Rational, Scalar};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C64 = Complex<f64>;
type Outcome = Result<String, String>;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = hyperkit_cli::run(std::iter::once("hyperkit").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn hp_grid() -> Vec<Rational> {
    vec![r(3, 2), r(2, 1), r(5, 2), r(3, 1), r(10, 1)]
}

fn groups() -> Vec<(&'static str, CayleyTable)> {
    vec![
        ("S3", CayleyTable::symmetric(3).unwrap()),
        ("S4", CayleyTable::symmetric(4).unwrap()),
        ("D4", CayleyTable::dihedral(4)),
        ("Q8", CayleyTable::quaternion()),
        ("Z6", CayleyTable::cyclic(6)),
    ]
}

// ---------------------------------------------------------------- criterion 1

fn criterion_1() -> Outcome {
    for p in hp_grid() {
        let h = hp(p.clone()).map_err(|e| e.to_string())?;
        ensure(h.haar() == [r(1, 1), p.clone()], || format!("p={p}: haar {:?}", h.haar()))?;
        let t = characters(&h).map_err(|e| e.to_string())?;
        let chi_a = t.value(1, 1).clone();
        ensure(chi_a == Complex::new(-r(1, 1) / p.clone(), r(0, 1)), || format!("p={p}: chi(a) = {chi_a}"))?;
        ensure(t.hyperdim()[1] == p, || format!("p={p}: k = {}", t.hyperdim()[1]))?;
    }
    Ok("lambda(a) = p, chi(a) = -1/p, k = p exactly for p in {3/2, 2, 5/2, 3, 10}".into())
}

// ---------------------------------------------------------------- criterion 2

fn criterion_2() -> Outcome {
    let mut values = Vec::new();
    for p in hp_grid() {
        let t = characters(&hp(p.clone()).unwrap()).map_err(|e| e.to_string())?;
        let am = amenability_constant(&t).map_err(|e| e.to_string())?;
        // independent closed form
        let expected = (r(5, 1) * p.clone() * p.clone() - r(2, 1) * p.clone() + r(1, 1))
            / ((p.clone() + r(1, 1)) * (p.clone() + r(1, 1)));
        ensure(am == expected, || format!("p={p}: AM {am}, expected {expected}"))?;
        ensure(hp_amenability_formula(&p) == expected, || "library closed form disagrees".into())?;
        ensure(am > r(1, 1) && am < r(5, 1), || format!("p={p}: AM {am} outside (1,5)"))?;
        values.push(am);
    }
    ensure(values.windows(2).all(|w| w[0] < w[1]), || format!("not increasing: {values:?}"))?;
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h2.hgf");
    let (code, _) = run_cli(&["hp", "--p", "2", "--emit", file.to_str().unwrap()]);
    ensure(code == 0, || format!("hp exit {code}"))?;
    let (code, out) = run_cli(&["am", file.to_str().unwrap(), "--mode", "exact"]);
    ensure(code == 0 && out == "17/9\n", || format!("am printed {out:?} (exit {code})"))?;
    let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    Ok(format!("AM(H_p) = (5p^2-2p+1)/(p+1)^2 exactly: {}; CLI prints 17/9", shown.join(", ")))
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Outcome {
    let path = data_file("jewett.hgf");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let h = hyperkit_cli::format::HypergroupFile::from_json(&text)
        .and_then(|f| f.to_hypergroup::<Rational>())
        .map_err(|e| e.to_string())?;
    ensure(h.haar() == [r(1, 1), r(4, 1), r(4, 1)], || format!("haar {:?}", h.haar()))?;
    let t = characters(&h).map_err(|e| e.to_string())?;
    let mut ks = t.hyperdim().to_vec();
    ks.sort();
    ensure(ks == [r(1, 1), r(36, 17), r(100, 17)], || format!("k = {ks:?}"))?;
    let obstruction = match dual_hypergroup(&t).map_err(|e| e.to_string())? {
        DualResult::Obstruction(o) => o,
        DualResult::Dual(_) => return Err("dual unexpectedly formed a hypergroup".into()),
    };
    let col = t.to_f64().column_orthogonality_residual();
    ensure(col <= 1e-10, || format!("column orthogonality residual {col:e}"))?;
    ensure(t.column_orthogonality_residual() == 0.0, || "exact column orthogonality fails".into())?;
    let (code, out) = run_cli(&["dual", path.to_str().unwrap()]);
    ensure(code == 1 && out.contains("obstruction"), || format!("CLI dual exit {code}: {out}"))?;
    Ok(format!(
        "haar (1,4,4), k (1,36/17,100/17); dual obstruction chi{}*chi{} on chi{} = {}; column orthogonality exact",
        obstruction.i, obstruction.j, obstruction.k, obstruction.coefficient.re
    ))
}

// ---------------------------------------------------------------- criterion 4

/// Brute-force conjugacy classes, ordered by smallest member.
fn oracle_classes(t: &CayleyTable) -> Vec<Vec<usize>> {
    let n = t.order();
    let inv: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| t.mul(g, h) == t.identity()).unwrap()).collect();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|g| t.mul(t.mul(g, x), inv[g])).collect();
        class.sort();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

/// Normalized characters `χ/d` and degrees from the class algebra: the
/// central characters `ω` are common right eigenvectors of the class
/// multiplication matrices `(A_i)_{jk} = #{(x, y) ∈ C_i × C_j : xy = z_k}`.
fn oracle_characters(t: &CayleyTable) -> (Vec<Vec<usize>>, Vec<(Vec<C64>, f64)>) {
    let classes = oracle_classes(t);
    let m = classes.len();
    let mut class_of = vec![0; t.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    let mut a = vec![DMatrix::<f64>::zeros(m, m); m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let z = classes[k][0];
                let count = classes[i]
                    .iter()
                    .flat_map(|&x| classes[j].iter().map(move |&y| (x, y)))
                    .filter(|&(x, y)| t.mul(x, y) == z)
                    .count();
                a[i][(j, k)] = count as f64;
            }
        }
    }
    // Σ_k a_ijk ω_k = ω_i ω_j, so ω is a right eigenvector of every A_i
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..1.5)).collect();
    let mut mix = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        mix += &a[i] * weights[i];
    }
    let eig = mix.complex_eigenvalues();
    let cmix = mix.map(|v| C64::new(v, 0.0));
    let mut out = Vec::new();
    for mu in eig.iter() {
        let shifted = &cmix - DMatrix::<C64>::identity(m, m) * *mu;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.unwrap();
        let (idx, _) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |b, (i, s)| if *s < b.1 { (i, *s) } else { b });
        let mut w: Vec<C64> = (0..m).map(|k| v_t[(idx, k)].conj()).collect();
        let e = class_of[t.identity()];
        let scale = w[e];
        for v in &mut w {
            *v /= scale;
        }
        // normalized character value on class i is ω_i / |C_i|
        let values: Vec<C64> = (0..m).map(|i| w[i] / classes[i].len() as f64).collect();
        let norm: f64 = (0..m).map(|i| classes[i].len() as f64 * values[i].norm_sqr()).sum();
        let d = (t.order() as f64 / norm).sqrt();
        out.push((values, d));
    }
    (classes, out)
}

fn criterion_4() -> Outcome {
    let mut details = Vec::new();
    for (name, g) in groups() {
        let h = conjugacy_hypergroup::<f64>(&g);
        ensure(validate(&h.to_data()).unwrap().passed(), || format!("Conj({name}) fails validation"))?;
        let t = characters(&h).map_err(|e| format!("{name}: {e}"))?;
        let (classes, oracle) = oracle_characters(&g);
        ensure(t.len() == classes.len() && h.order() == classes.len(), || format!("{name}: class count"))?;
        // library class index -> oracle class index via representatives
        let perm: Vec<usize> = (0..h.order())
            .map(|x| {
                let rep = h.label(x).trim_start_matches("C(").trim_end_matches(')');
                let g_idx = g.labels().iter().position(|l| l == rep).unwrap();
                classes.iter().position(|c| c.contains(&g_idx)).unwrap()
            })
            .collect();
        let mut used = vec![false; oracle.len()];
        for i in 0..t.len() {
            let hit = oracle.iter().enumerate().position(|(j, (vals, _))| {
                !used[j] && (0..h.order()).all(|x| (t.value(i, x) - vals[perm[x]]).norm() < 1e-8)
            });
            let j = hit.ok_or_else(|| format!("{name}: character {i} not found by the oracle"))?;
            used[j] = true;
            let d = oracle[j].1;
            ensure((d - d.round()).abs() < 1e-8, || format!("{name}: degree {d} not integral"))?;
            ensure((t.hyperdim()[i] - d * d).abs() < 1e-8, || format!("{name}: k = {} but d^2 = {}", t.hyperdim()[i], d * d))?;
        }
        let ksum: f64 = t.hyperdim().iter().sum();
        ensure((ksum - g.order() as f64).abs() < 1e-8 && (h.total_haar() - g.order() as f64).abs() < 1e-12, || {
            format!("{name}: sum k = {ksum}")
        })?;
        // bidual
        let dual = dual_hypergroup(&t).map_err(|e| e.to_string())?.dual().ok_or(format!("{name}: no dual"))?;
        let td = characters(&dual).map_err(|e| e.to_string())?;
        let bidual = dual_hypergroup(&td).map_err(|e| e.to_string())?.dual().ok_or(format!("{name}: no bidual"))?;
        // bidual character j is evaluation at some x: i ↦ χ_i(x)
        let eval: Vec<usize> = (0..td.len())
            .map(|j| {
                (0..h.order())
                    .find(|&x| (0..t.len()).all(|i| (td.value(j, i) - t.value(i, x)).norm() < 1e-7))
                    .ok_or(format!("{name}: bidual character {j} is not an evaluation"))
            })
            .collect::<Result<_, _>>()?;
        let mut worst = 0.0f64;
        for a in 0..h.order() {
            for b in 0..h.order() {
                for c in 0..h.order() {
                    worst = worst.max((bidual.coefficient(a, b, c) - h.coefficient(eval[a], eval[b], eval[c])).abs());
                }
            }
        }
        ensure(worst < 1e-7, || format!("{name}: bidual tensor differs by {worst:e}"))?;
        let ds: Vec<String> = oracle.iter().map(|(_, d)| format!("{}", d.round())).collect();
        details.push(format!("{name}[d={}]", ds.join(",")));
    }
    Ok(format!("chi = chi_pi/d_pi and k = d_pi^2 against the class-algebra oracle; bidual matches: {}", details.join(" ")))
}

// ---------------------------------------------------------------- corpus

fn corpus() -> Vec<(String, FloatHypergroup)> {
    let mut out: Vec<(String, FloatHypergroup)> = Vec::new();
    for n in 1..=12 {
        out.push((format!("Z{n}"), group_hypergroup(&CayleyTable::cyclic(n))));
    }
    for p in hp_grid() {
        out.push((format!("H_{p}"), hp(p.to_f64()).unwrap()));
    }
    for (name, g) in groups() {
        let h = conjugacy_hypergroup::<f64>(&g);
        let dual = dual_hypergroup(&characters(&h).unwrap()).unwrap().dual().unwrap();
        out.push((format!("Conj({name})"), h));
        out.push((format!("dual Conj({name})"), dual));
    }
    let z2 = group_hypergroup::<f64>(&CayleyTable::cyclic(2));
    for p in hp_grid() {
        let j = join(&z2, &hp(p.to_f64()).unwrap()).unwrap();
        out.push((format!("Z2 v H_{p}"), j.clone()));
        out.push((format!("(Z2 v H_{p})/Z2"), quotient(&j, &[0, 1]).unwrap().hypergroup));
    }
    let cs3 = conjugacy_hypergroup::<f64>(&CayleyTable::symmetric(3).unwrap());
    out.push(("Conj(S3) v H_2".into(), join(&cs3, &hp(2.0).unwrap()).unwrap()));
    out.push(("Z4/{0,2}".into(), quotient(&group_hypergroup(&CayleyTable::cyclic(4)), &[0, 2]).unwrap().hypergroup));
    out.push(("Conj(S3)/{C_e,C_3cyc}".into(), quotient(&cs3, &three_cycles(&cs3)).unwrap().hypergroup));
    out
}

/// `{C_e, C_3cyc}` in `Conj(S₃)`: the identity and the class of size 2.
fn three_cycles(h: &FloatHypergroup) -> Vec<usize> {
    let c = (0..h.order()).find(|&x| (h.haar()[x] - 2.0).abs() < 1e-12).unwrap();
    let mut k = vec![h.identity(), c];
    k.sort();
    k
}

fn random_function(h: &FloatHypergroup, rng: &mut ChaCha8Rng) -> HFunction<f64> {
    loop {
        let density = rng.random_range(0.1..=1.0);
        let values: Vec<C64> = (0..h.order())
            .map(|_| {
                if rng.random_bool(density) {
                    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        if values.iter().any(|v| v.norm() > 0.0) {
            return HFunction::new(h, values).unwrap();
        }
    }
}

/// `Σ |Δ(x,y)| λ(x) λ(y)` where `Δ` solves `m(Δ) = δ_e`, `δ_w·Δ = Δ·δ_w`
/// by least squares, without reference to characters.
fn diagonal_norm_oracle(h: &FloatHypergroup) -> Result<f64, String> {
    let n = h.order();
    let lam = h.haar();
    let inv = |x: usize| h.inverse(x);
    // (δ_a * δ_b)(z) in ℓ¹: λ(a) c[ã][z][b]
    let conv = |a: usize, b: usize, z: usize| lam[a] * h.coefficient(inv(a), z, b);
    let rows = n + n * n * n;
    let mut m = DMatrix::<f64>::zeros(rows, n * n);
    let mut rhs = nalgebra::DVector::<f64>::zeros(rows);
    rhs[h.identity()] = 1.0;
    for a in 0..n {
        for b in 0..n {
            let col = a * n + b;
            for z in 0..n {
                m[(z, col)] += conv(a, b, z);
            }
            // (δ_w·E_ab)(x,y) = (δ_w * δ_a)(x) [y=b];  (E_ab·δ_w)(x,y) = [x=a] (δ_b * δ_w)(y)
            for w in 0..n {
                for x in 0..n {
                    let row = n + (w * n + x) * n + b;
                    m[(row, col)] += conv(w, a, x);
                }
                for y in 0..n {
                    let row = n + (w * n + a) * n + y;
                    m[(row, col)] -= conv(b, w, y);
                }
            }
        }
    }
    let svd = m.clone().svd(true, true);
    let sol = svd.solve(&rhs, 1e-12).map_err(|e| e.to_string())?;
    let resid = (&m * &sol - &rhs).amax();
    if resid > 1e-9 {
        return Err(format!("diagonal equations inconsistent (residual {resid:e})"));
    }
    let smallest = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if smallest < 1e-9 {
        return Err("diagonal not unique".into());
    }
    Ok((0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| sol[x * n + y].abs() * lam[x] * lam[y]).sum())
}

fn check_table(name: &str, h: &FloatHypergroup, t: &CharacterTable<f64>) -> Result<(), String> {
    let dsq: usize = t.dims().iter().map(|d| d * d).sum();
    ensure(dsq == h.order(), || format!("{name}: sum d^2 = {dsq}"))?;
    let kd: f64 = t.hyperdim().iter().zip(t.dims()).map(|(k, d)| k * *d as f64).sum();
    ensure((kd - h.total_haar()).abs() <= 1e-8 * h.total_haar(), || format!("{name}: sum k d = {kd}"))?;
    let (row, col) = (t.row_orthogonality_residual(), t.column_orthogonality_residual());
    ensure(row <= 1e-8 && col <= 1e-8 * h.total_haar(), || format!("{name}: orthogonality {row:e} / {col:e}"))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Outcome {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_am = 0.0f64;
    for (name, h) in &corpus {
        let report = validate(&h.to_data()).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.passed(), || format!("{name}: {report}"))?;
        let t = characters(h).map_err(|e| format!("{name}: {e}"))?;
        check_table(name, h, &t)?;
        for _ in 0..50 {
            let f = random_function(h, &mut rng);
            let (rt, pd) = (round_trip_defect(&t, &f).unwrap(), parseval_defect(&t, &f).unwrap());
            ensure(rt <= 1e-9 && pd <= 1e-9, || format!("{name}: round trip {rt:e}, Parseval {pd:e}"))?;
        }
        let am = amenability_constant(&t).map_err(|e| e.to_string())?;
        ensure(am >= 1.0 - 1e-10, || format!("{name}: AM = {am} < 1"))?;
        let is_one = (am - 1.0).abs() <= 1e-10;
        ensure(is_one == h.is_group(), || format!("{name}: AM = {am}, group = {}", h.is_group()))?;
        let oracle = diagonal_norm_oracle(h).map_err(|e| format!("{name}: {e}"))?;
        let rel = (am - oracle).abs() / oracle;
        ensure(rel <= 1e-10, || format!("{name}: AM {am} vs ||Delta|| {oracle} (rel {rel:e})"))?;
        worst_am = worst_am.max(rel);
    }
    Ok(format!(
        "{} hypergroups: axioms, sum d^2, sum kd, orthogonality, Fourier/Parseval, AM >= 1 (= 1 iff group), AM vs ||Delta|| (max rel {worst_am:.1e})",
        corpus.len()
    ))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Outcome {
    let k = group_hypergroup::<f64>(&CayleyTable::cyclic(2));
    let mut seen = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        let j = hp(p).unwrap();
        let h = join(&k, &j).map_err(|e| e.to_string())?;
        let report = verify_join_dual(&k, &j, &h).map_err(|e| format!("p={p}: {e}"))?;
        let mut ks: Vec<f64> = report.matches.iter().map(|m| m.hyperdim).collect();
        ks.sort_by(f64::total_cmp);
        let mut expected = vec![1.0, 1.0 + p, p];
        expected.sort_by(f64::total_cmp);
        ensure(ks.iter().zip(&expected).all(|(a, b)| (a - b).abs() <= 1e-8), || format!("p={p}: k = {ks:?}"))?;
        for m in &report.matches {
            let want = match m.operand {
                // k of the nontrivial Z2 character is 1
                JoinOperand::K => report.j_total_haar,
                JoinOperand::J => if m.source == 0 { 1.0 } else { p },
            };
            ensure((m.hyperdim - want).abs() <= 1e-8, || format!("p={p}: {:?} character has k {}", m.operand, m.hyperdim))?;
        }
        ensure(report.matches.iter().filter(|m| m.operand == JoinOperand::K).count() == 1, || "one K character".into())?;
        seen.push(format!("p={p}: ({})", ks.iter().map(|k| format!("{k:.6}")).collect::<Vec<_>>().join(", ")));
    }
    Ok(format!("Z2 v H_p hyperdimensions (1, 1+p, p): {}", seen.join("; ")))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Outcome {
    let z4 = group_hypergroup::<Rational>(&CayleyTable::cyclic(4));
    let a = verify_quotient_dual(&z4, &[0, 2]).map_err(|e| e.to_string())?;
    let cs3 = conjugacy_hypergroup::<Rational>(&CayleyTable::symmetric(3).unwrap());
    let sub = three_cycles(&cs3.to_f64());
    let b = verify_quotient_dual(&cs3, &sub).map_err(|e| e.to_string())?;
    for (name, rep) in [("Z4/{0,2}", &a), ("Conj(S3)/{C_e,C_3cyc}", &b)] {
        ensure(rep.matches.len() == rep.quotient_order, || format!("{name}: not a bijection"))?;
        ensure(rep.matches.iter().all(|m| (m.hyperdim - m.quotient_hyperdim).abs() <= 1e-8), || format!("{name}: k changed"))?;
    }
    Ok(format!("Z4/{{0,2}}: {} characters; Conj(S3)/{{C_e,C_3cyc}}: {} characters; k preserved", a.matches.len(), b.matches.len()))
}

// ---------------------------------------------------------------- criterion 8

fn criterion_8() -> Outcome {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0usize;
    let mut indicators = 0usize;
    for (name, h) in &corpus {
        let t = characters(h).map_err(|e| format!("{name}: {e}"))?;
        for _ in 0..1000 {
            let f = random_function(h, &mut rng);
            let rep = uncertainty_check(&t, &f).map_err(|e| e.to_string())?;
            ensure(rep.holds && rep.ratio >= 1.0 - 1e-12, || format!("{name}: ratio {} for {:?}", rep.ratio, f.values()))?;
            total += 1;
        }
        let e = uncertainty_check(&t, &HFunction::point(h, h.identity())).unwrap();
        ensure((e.ratio - 1.0).abs() <= 1e-10, || format!("{name}: delta_e ratio {}", e.ratio))?;
        // brute-force subhypergroups, cross-checked with the library enumeration
        let n = h.order();
        let others: Vec<usize> = (0..n).filter(|&x| x != h.identity()).collect();
        let mut subs = Vec::new();
        for mask in 0u32..(1 << others.len()) {
            let mut k: Vec<usize> = vec![h.identity()];
            k.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
            k.sort();
            if is_subhypergroup(h, &k) {
                subs.push(k);
            }
        }
        let mut listed = subhypergroups(h);
        listed.sort();
        subs.sort();
        ensure(listed == subs, || format!("{name}: subhypergroup enumeration {listed:?} vs {subs:?}"))?;
        for k in &subs {
            let rep = uncertainty_check(&t, &HFunction::indicator(h, k)).unwrap();
            ensure((rep.ratio - 1.0).abs() <= 1e-10, || format!("{name}: indicator of {k:?} has ratio {}", rep.ratio))?;
            indicators += 1;
        }
    }
    Ok(format!("{total} random functions satisfy the inequality; delta_e and {indicators} subhypergroup indicators give ratio 1"))
}

// ---------------------------------------------------------------- criterion 9

fn criterion_9() -> Outcome {
    let corpus = corpus();
    let mut worst = 0.0f64;
    let mut worst_delta = 0.0f64;
    for (name, h) in &corpus {
        let t = characters(h).map_err(|e| format!("{name}: {e}"))?;
        let p = minimal_idempotents(&t);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let prod = convolve_l1(h, &p[i], &p[j]).unwrap();
                let expected = if i == j { p[i].clone() } else { HFunction::zeros(h) };
                worst = worst.max(prod.max_abs_diff(&expected));
            }
            // under the normalized product the idempotent is k χ = λ(H) p
            let kchi = p[i].scale(&C64::new(*h.total_haar(), 0.0));
            worst = worst.max(convolve(h, &kchi, &kchi).unwrap().max_abs_diff(&kchi));
        }
        let total = p.iter().skip(1).fold(p[0].clone(), |acc, q| acc.add(q).unwrap());
        worst = worst.max(total.max_abs_diff(&HFunction::point(h, h.identity())));
        if h.order() <= 12 {
            worst_delta = worst_delta.max(idempotency_residual(&t).unwrap());
        }
        ensure(worst <= 1e-8 && worst_delta <= 1e-8, || format!("{name}: residual {worst:e} / {worst_delta:e}"))?;
    }
    Ok(format!("p_i * p_j = delta_ij p_i (max {worst:.1e}); Delta * Delta = Delta on H x H (max {worst_delta:.1e})"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 H_p Haar and characters", criterion_1),
        ("2 H_p amenability constants", criterion_2),
        ("3 Jewett hypergroup", criterion_3),
        ("4 conjugacy-class hypergroups", criterion_4),
        ("5 corpus properties", criterion_5),
        ("6 join duals", criterion_6),
        ("7 quotient duals", criterion_7),
        ("8 uncertainty inequality", criterion_8),
        ("9 minimal idempotents and diagonal", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL  criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
