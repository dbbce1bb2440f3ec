//! One PASS/FAIL line per acceptance criterion. Runs the verification suites
//! at their default sizes, each criterion on its own thread.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;

use tilecrystal::crossings::CrossingCrystal;
use tilecrystal::lusztig::LusztigDatum;
use tilecrystal::report::Report;
use tilecrystal::strings;
use tilecrystal::tiling::Tiling;
use tilecrystal::verify::{self, Options, Suite};
use tilecrystal::words::ReducedWord;

type Outcome = Result<Vec<Report>, String>;

fn suite(s: Suite) -> Outcome {
    verify::run(s, &Options::default()).map_err(|e| e.to_string())
}

fn word(text: &str) -> ReducedWord {
    text.parse().expect("valid word")
}

fn level_sets(levels: &[&[(u8, u8)]]) -> Vec<BTreeSet<(u8, u8)>> {
    levels.iter().map(|l| l.iter().copied().collect()).collect()
}

fn examples() -> Outcome {
    let mut report = Report::new("worked examples");

    let c212 = CrossingCrystal::new(&word("212")).map_err(|e| e.to_string())?;
    let rows: BTreeSet<Vec<i64>> = strings::reineke_rows(&c212, true).into_iter().collect();
    let want: BTreeSet<Vec<i64>> = [vec![1, 0, 0], vec![0, 1, -1], vec![0, 0, 1]].into_iter().collect();
    report.expect(rows == want, || format!("dual Reineke vectors of 212: {rows:?}"));
    let text = strings::string_cone(&c212).inequalities();
    let lines: BTreeSet<&str> = text.lines().collect();
    let want: BTreeSet<&str> = ["x[2,3] >= 0", "x[1,3] - x[1,2] >= 0", "x[1,2] >= 0"].into_iter().collect();
    report.expect(lines == want, || format!("string cone of 212: {text}"));

    let running = Tiling::new(&word("2,1,2,3,4,3,2,1,3,2"));
    let kappa5: &[&[(u8, u8)]] =
        &[&[(2, 3)], &[(1, 3)], &[(1, 2)], &[(1, 4)], &[(1, 5)], &[(4, 5)], &[(2, 5)], &[(3, 5), (2, 4)], &[(3, 4)]];
    let kappa3: &[&[(u8, u8)]] =
        &[&[(2, 3)], &[(1, 3)], &[(1, 2), (3, 5)], &[(2, 5), (3, 4)], &[(2, 4)], &[(4, 5)], &[(1, 4)], &[(1, 5)]];
    for (s, want) in [(5, kappa5), (3, kappa3)] {
        let got = verify::kappa_pairs(&running, s).map_err(|e| e.to_string())?;
        let got: Vec<BTreeSet<(u8, u8)>> = got.into_iter().map(|l| l.into_iter().collect()).collect();
        report.expect(got == level_sets(want), || format!("kappa_{s} levels: {got:?}"));
    }

    let w121 = word("121");
    let c121 = CrossingCrystal::new(&w121).map_err(|e| e.to_string())?;
    for (x, s) in [([0, 0, 1], [0, 1, 0]), ([0, 1, 0], [0, 1, 1]), ([1, 1, 0], [1, 1, 1])] {
        let datum = LusztigDatum::from_word_coords(&w121, &x).map_err(|e| e.to_string())?;
        let got = strings::string_datum(&c121, &datum).map_err(|e| e.to_string())?;
        report.expect(got == s, || format!("string datum of {x:?}: {got:?}"));
    }

    let before = Tiling::new(&word("1,2,3,1,2,1"));
    let after = Tiling::new(&word("1,2,3,2,1,2"));
    let flipped: Vec<_> = before
        .hexagons()
        .iter()
        .filter_map(|h| before.flip(h).ok())
        .filter(|f| f.tiling.tiles() == after.tiles())
        .collect();
    report.expect(!flipped.is_empty(), || "no hexagon flip of T_(1,2,3,1,2,1) gives T_(1,2,3,2,1,2)".into());
    Ok(vec![report])
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("crossing formulas agree with transport", || suite(Suite::Crossing)),
        ("worked examples", examples),
        ("string cone duality", || suite(Suite::Duality)),
        ("BZ commuting square", || suite(Suite::Am)),
        ("geometric transition identities", || suite(Suite::Rtrans)),
        ("GHKK restriction and cone correspondence", || suite(Suite::Ghkk)),
        ("BK potential identities", || suite(Suite::Bk)),
        ("lattice, re-selection and Weyl dimension", || suite(Suite::Lattice)),
    ];
    let outcomes: Vec<Outcome> = thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| scope.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });

    let mut all = true;
    for (k, ((name, _), outcome)) in criteria.iter().zip(outcomes).enumerate() {
        let (ok, detail) = match outcome {
            Ok(reports) => {
                let checked: u64 = reports.iter().map(|r| r.checked).sum();
                let failed: u64 = reports.iter().map(|r| r.failed).sum();
                let first = reports.iter().flat_map(|r| r.failures.first()).next().cloned();
                let ok = reports.iter().all(Report::ok);
                let mut detail = format!("{checked} checks, {failed} failed");
                if let Some(f) = first {
                    detail.push_str(&format!("; first: {f}"));
                }
                (ok, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!("{} criterion {}: {name} ({detail})", if ok { "PASS" } else { "FAIL" }, k + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
