//! `specfun eval`: one value and its branch.

use crate::error::{config, CliResult};
use conecollapse::specfun::*;

pub const FUNCTIONS: [&str; 8] = ["J", "Y", "I", "K", "F", "G", "Kinu", "Linu"];

pub fn eval(function: &str, nu: f64, x: f64) -> CliResult<String> {
    let p = SeriesPolicy::default();
    let e = match function {
        "J" => bessel_j_eval(nu, x, &p),
        "Y" => bessel_y_eval(nu, x, &p),
        "I" => bessel_i_eval(nu, x, &p),
        "K" => bessel_k_eval(nu, x, &p),
        "F" => f_inu_eval(nu, x, &p),
        "G" => g_inu_eval(nu, x, &p),
        "Kinu" => k_inu_eval(nu, x, &p),
        "Linu" => l_inu_eval(nu, x, &p),
        _ => {
            return Err(config(format!(
                "unknown function '{function}' (expected one of {})",
                FUNCTIONS.join(", ")
            )))
        }
    }
    .map_err(conecollapse::Error::from)?;
    Ok(format!("{function}({nu:e}, {x:e}) = {:e}\nbranch = {}\n", e.value, e.branch))
}
