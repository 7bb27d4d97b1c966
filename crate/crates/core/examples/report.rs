//! Depth study of the equality operator across encodings.
use dqir::report::{run_report, to_csv, ReportSpec};

fn main() -> dqir::Result<()> {
    print!("{}", to_csv(&run_report(&ReportSpec::default())?, None));
    Ok(())
}
