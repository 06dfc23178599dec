//! `rd`: rate-distortion curve as CSV. Out-of-validity grid points are
//! marked with `nan` fields and the run continues.

use alwc_core::rd::rd_limit_check;

use super::{parse_f64_list, parse_source};
use crate::args::RdArgs;
use crate::csvfmt::float;
use crate::{symio, CliError};

pub fn run(a: RdArgs) -> Result<(), CliError> {
    let source = parse_source(&a.source)?;
    let grid = parse_f64_list(&a.d_grid)?;
    let rows = rd_limit_check(&source, &grid);
    let mut csv = String::from("d,theta,kappa,k_cut,tilde_entropy_bits,rate_bits,entropy_gap_bits\n");
    for row in rows {
        match row.point {
            Some(p) => {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    float(row.d),
                    float(p.theta),
                    float(p.kappa),
                    p.k_cut,
                    float(p.tilde_entropy_bits),
                    float(p.rate_bits),
                    float(row.gap_bits),
                ));
            }
            None => {
                csv.push_str(&format!("{},nan,nan,nan,nan,nan,nan\n", float(row.d)));
            }
        }
    }
    symio::write_text(&a.out, &csv)
}
