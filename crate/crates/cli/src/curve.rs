use anyhow::Result;
use clap::{Args, ValueEnum};

use vca_core::bounds::{breakpoint_curve, grid_curve, integral_curve, log_spaced};
use vca_core::rational::{big_decimal_up, decimal_up};
use vca_core::Ratio;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    /// `f_α` per α.
    Falpha,
    /// Ratio bound `2 − 2(1−α)f_α` per α.
    Bound,
    /// Refined-schedule bound per k.
    Integral,
}

#[derive(Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long, default_value_t = 20)]
    pub kmax: u64,
    /// Add a uniform grid of this many α values to the breakpoints.
    #[arg(long)]
    pub steps: Option<u64>,
}

fn fraction(r: Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn curve(args: &CurveArgs) -> Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    match args.what {
        What::Falpha | What::Bound => {
            let rows = match args.steps {
                Some(s) => grid_curve(s, args.kmax)?,
                None => breakpoint_curve(args.kmax)?,
            };
            let label = if args.what == What::Falpha { "f_alpha" } else { "ratio_bound" };
            out.write_record(["alpha", "alpha_decimal", label, "decimal"])?;
            for row in rows {
                let value = if args.what == What::Falpha { row.f_alpha } else { row.ratio_bound };
                out.write_record([fraction(row.alpha), decimal_up(row.alpha, 6), fraction(value), decimal_up(value, 6)])?;
            }
        }
        What::Integral => {
            out.write_record(["k", "alpha_k", "bound_decimal"])?;
            for row in integral_curve(&log_spaced(args.kmax))? {
                out.write_record([row.k.to_string(), fraction(row.alpha_k), big_decimal_up(&row.bound, 8)])?;
            }
        }
    }
    Ok(String::from_utf8(out.into_inner()?)?)
}
