//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use num_bigint::BigInt;
use num_rational::BigRational;

use linksig::circle::{root_multiplicity, CirclePoint};
use linksig::laurent::LaurentPoly;
use linksig::seifert::{higher_alexander_by_minors, link_invariants, SeifertMatrix};
use linksig::signature::{jumps_at, signature_at, signature_function_with, PointValue, StepFunction};
use linksig::verify::campaign::{run_campaign, CampaignConfig, CampaignSummary};
use linksig::verify::io::MatrixFile;
use linksig::verify::{analyze, oracle_report, shadow_report, structural_report, Options, TheoremId};

const SEED: u64 = 2024;
const FAMILY: [i64; 8] = [-4, -3, -2, -1, 0, 1, 2, 3];

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn family_file(n: i64) -> PathBuf {
    if n < 0 {
        fixture(&format!("family_nm{}.json", -n))
    } else {
        fixture(&format!("family_n{n}.json"))
    }
}

fn load(path: &PathBuf) -> SeifertMatrix {
    MatrixFile::load(path).unwrap().seifert().unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sf(s: &SeifertMatrix) -> StepFunction {
    signature_function_with(s, &link_invariants(s), 2).unwrap()
}

/// Accumulates the reasons a criterion fails.
#[derive(Default)]
struct Verdict(Vec<String>);

impl Verdict {
    fn require(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok {
            self.0.push(why());
        }
    }
}

fn exact(v: &PointValue) -> Option<i64> {
    v.exact().map(|x| x.signature)
}

fn criterion_1() -> Verdict {
    let mut v = Verdict::default();
    for n in FAMILY {
        let out = Command::new(env!("CARGO_BIN_EXE_linksig"))
            .arg("invariants")
            .arg(family_file(n))
            .output()
            .unwrap();
        v.require(out.status.success(), || format!("n = {n}: exit {}", out.status));
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
        let q = LaurentPoly::poly(&[n + 1, -(n + 2), n + 1]);
        let expected = (&LaurentPoly::t_minus_one() * &q).canonical().to_string();
        v.require(json["deltas"][0] == "0", || format!("n = {n}: Δ_1 = {}", json["deltas"][0]));
        v.require(json["a_poly"] == expected.as_str(), || {
            format!("n = {n}: A = {} expected {expected}", json["a_poly"])
        });
        v.require(json["deltas"][1] == expected.as_str(), || format!("n = {n}: Δ_2 = {}", json["deltas"][1]));
        v.require(json["h"] == 2, || format!("n = {n}: h = {}", json["h"]));
        v.require(json["components"] == 3, || format!("n = {n}: μ = {}", json["components"]));
        v.require(json["genus"] == 1, || format!("n = {n}: g = {}", json["genus"]));
    }
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::default();
    for n in FAMILY {
        let f = sf(&load(&family_file(n)));
        let one = exact(&f.points[0].value);
        v.require(f.points[0].point == CirclePoint::One && one == Some(0), || {
            format!("n = {n}: value at 1 is {one:?}")
        });
        let interior: Vec<_> = f.points.iter().filter(|p| p.point.is_interior()).collect();
        let (points, arcs): (Vec<(BigRational, i64)>, Vec<i64>) = match n {
            n if n <= -2 => (vec![(q(n + 2, 2 * (n + 1)), -2)], vec![-1, -3]),
            n if n >= 1 => (vec![(q(n + 2, 2 * (n + 1)), 0)], vec![1, -1]),
            _ => (vec![], vec![-1]),
        };
        let got_points: Vec<_> = interior
            .iter()
            .map(|p| {
                let c = match &p.point {
                    CirclePoint::RationalCos(c) => Some(c.clone()),
                    _ => None,
                };
                (c, exact(&p.value))
            })
            .collect();
        let want_points: Vec<_> = points.iter().map(|(c, s)| (Some(c.clone()), Some(*s))).collect();
        v.require(got_points == want_points, || {
            format!("n = {n}: jump points {got_points:?}, expected {want_points:?}")
        });
        v.require(f.arc_values() == arcs, || format!("n = {n}: arcs {:?}, expected {arcs:?}", f.arc_values()));
        let last = f.points.last().unwrap();
        v.require(exact(&last.value) == arcs.last().copied(), || {
            format!("n = {n}: value at -1 is {:?}", exact(&last.value))
        });
    }
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::default();
    let s = load(&fixture("zero_signature.json"));
    let inv = link_invariants(&s);
    let expected = &LaurentPoly::t_minus_one().pow(2) * &LaurentPoly::t_plus_one().pow(2);
    let delta = inv.delta(1);
    v.require(delta.is_associate(&expected), || format!("Δ = {delta}"));
    let f = sf(&s);
    v.require(f.arc_values().iter().all(|&x| x == 0), || format!("arcs {:?}", f.arc_values()));
    for p in &f.points {
        v.require(exact(&p.value) == Some(0), || format!("σ({}) = {:?}", p.point, exact(&p.value)));
    }
    for p in [CirclePoint::RationalCos(q(0, 1)), CirclePoint::MinusOne] {
        let val = signature_at(&s, &p).map(|x| x.signature);
        v.require(matches!(val, Ok(0)), || format!("σ({p}) = {val:?}"));
    }
    let m = root_multiplicity(&delta, &CirclePoint::MinusOne).unwrap();
    v.require(m == 2, || format!("mult_-1 = {m}"));
    match jumps_at(&f, &CirclePoint::MinusOne) {
        Ok(j) => {
            v.require(j.minus == 0 && j.plus == 0, || format!("ju±(-1) = {}, {}", j.minus, j.plus));
            v.require(2 * j.minus.abs().max(j.plus.abs()) <= i64::from(m), || "ju±(-1) exceeds ½ mult".into());
        }
        Err(e) => v.require(false, || format!("jumps at -1: {e}")),
    }
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::default();
    for n in FAMILY {
        let s = load(&family_file(n));
        let want = if n <= -2 { -3 } else { -1 };
        let got = sf(&s).murasugi();
        let direct = signature_at(&s, &CirclePoint::MinusOne).map(|x| x.signature);
        v.require(got == want, || format!("n = {n}: σ(-1) = {got}, expected {want}"));
        v.require(matches!(direct, Ok(d) if d == want), || format!("n = {n}: direct σ(-1) = {direct:?}"));
    }
    v
}

fn theorem_failures(c: &CampaignSummary) -> Verdict {
    let mut v = Verdict::default();
    v.require(c.errors.is_empty(), || format!("errors: {:?}", c.errors));
    v.require(c.count == 200, || format!("ran {} matrices", c.count));
    for id in TheoremId::ALL {
        let t = c.tally(id.name());
        v.require(t.failed == 0, || format!("{}: {} failed", id.name(), t.failed));
    }
    v.require(c.tally("main").applicable == 200, || "main not applied to every matrix".into());
    v
}

/// Fixture analyses feeding the oracle and structural criteria.
fn fixture_analyses() -> Vec<linksig::verify::Analysis> {
    let mut files: Vec<_> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let f = MatrixFile::load(p).unwrap();
            let s = f.seifert().unwrap();
            analyze(&f.name, &s, Options { samples_per_arc: 2, inject_fault: false }).unwrap()
        })
        .collect()
}

fn failures_matching(c: &CampaignSummary, report: &str, needle: &str) -> usize {
    c.failures
        .iter()
        .filter(|f| f.report == report && f.check.description.contains(needle))
        .count()
}

fn criterion_6(c: &CampaignSummary, fixtures: &[linksig::verify::Analysis]) -> Verdict {
    let mut v = Verdict::default();
    v.require(c.errors.is_empty(), || format!("errors: {:?}", c.errors));
    for (part, needle) in [("a", "by minors"), ("b", "diagonal ju"), ("c", "<= |D - E|")] {
        let k = failures_matching(c, "oracles", needle);
        v.require(k == 0, || format!("({part}) {k} campaign failures"));
    }
    let mut minors = 0;
    for a in fixtures {
        let rep = oracle_report(a, 6).unwrap();
        for chk in rep.failures() {
            v.require(false, || format!("{}: {} at {:?}", a.name, chk.description, chk.point));
        }
        if a.matrix.size() <= 6 {
            for i in 1..=a.matrix.size() + 1 {
                minors += 1;
                let m = higher_alexander_by_minors(&a.matrix, i).unwrap();
                v.require(m == a.inv.delta(i), || format!("{}: Δ_{i} by minors {m}", a.name));
            }
        }
    }
    v.require(minors > 0, || "no minor comparisons".into());
    v.require(c.tally("oracles").checks > 0, || "no oracle checks in the campaign".into());
    v
}

fn criterion_7(c: &CampaignSummary, fixtures: &[linksig::verify::Analysis]) -> Verdict {
    let mut v = Verdict::default();
    let t = c.tally("structure");
    v.require(t.failed == 0 && t.applicable == 200, || format!("structure tally {t:?}"));
    let k = failures_matching(c, "oracles", "multiplicity of f in det W");
    v.require(k == 0, || format!("{k} Σε mismatches in the campaign"));
    for a in fixtures {
        for chk in structural_report(a).failures() {
            v.require(false, || format!("{}: {} at {:?}", a.name, chk.description, chk.point));
        }
    }
    v
}

fn criterion_8(c: &CampaignSummary, fixtures: &[linksig::verify::Analysis]) -> Verdict {
    let mut v = Verdict::default();
    let s = c.shadow;
    v.require(s.compared > 0 && s.agreed == s.compared, || format!("campaign shadow {s:?}"));
    v.require(c.tally("shadow").failed == 0, || "shadow mismatches reported".into());
    for a in fixtures {
        let (tally, mismatches) = shadow_report(a);
        v.require(mismatches.is_empty() && tally.agreed == tally.compared, || {
            format!("{}: shadow {tally:?}", a.name)
        });
    }
    v
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    let mut record = |k: u32, title: &str, v: Verdict| {
        let status = if v.0.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {k}: {status}  {title}");
        for why in &v.0 {
            println!("    {why}");
        }
        lines.push(v.0.is_empty());
    };
    record(1, "family invariants via `linksig invariants`", criterion_1());
    record(2, "family step functions", criterion_2());
    record(3, "three-component example with zero signature", criterion_3());
    record(4, "family Murasugi signatures", criterion_4());

    let campaign = run_campaign(&CampaignConfig::new(200, 10, SEED));
    let fixtures = fixture_analyses();
    record(5, "campaign 200 / size 10: theorem checks", theorem_failures(&campaign));
    record(6, "oracle equivalences", criterion_6(&campaign, &fixtures));
    record(7, "structural invariants", criterion_7(&campaign, &fixtures));
    record(8, "floating shadow agreement", criterion_8(&campaign, &fixtures));
    println!(
        "campaign seed {SEED}: {} localized points, {} unresolved points, shadow {}/{} agreed",
        campaign.localized_points, campaign.unresolved_points, campaign.shadow.agreed, campaign.shadow.compared
    );
    if lines.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
