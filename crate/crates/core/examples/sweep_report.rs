//! A parallel sweep with a JSON report on stdout.

use sun_identity::verifier::{cases, write_json, write_text, Family, IntRange, Mode, SweepRanges, Verifier};

fn main() -> std::io::Result<()> {
    let ranges = SweepRanges {
        m: IntRange { lo: 1, hi: 4 },
        ..Default::default()
    };
    let list = cases(Family::Eq6, &ranges, Mode::All).unwrap();
    let reports = Verifier::default().sweep(&list, 4);
    write_text(&reports, &mut std::io::stderr())?;
    write_json(&reports[..1], false, &mut std::io::stdout())
}
