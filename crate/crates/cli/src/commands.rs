use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wrightlens::bounds::{
    bound_sequence_closed, bound_sequence_recursive, coefficient_bound_check, extraction_residuals,
    series_identity_oracle,
};
use wrightlens::classdef::{
    caratheodory_series, constant_term_obstruction, convolution_scan, membership_check,
    schwarz_generate, sufficiency_predicate, SchwarzFunction, Verdict,
};
use wrightlens::io::{read_coefficients, read_weights, write_coefficients};
use wrightlens::radii::{solve_radius, RadiusKind, RadiusQuery, RadiusResult, Weights};
use wrightlens::special::{phi_table, wright_eval};
use wrightlens::{ClassParams, GridSpec, LaurentSeries, WrightParams};

use crate::args::{
    BoundsCmd, ClassArgs, GenerateCmd, GridArgs, KindArg, MemberCmd, PhiTableCmd, RadiusCmd,
    VerifyCmd, WrightArgs, WrightCmd,
};
use crate::complex::{fmt_real as num, format_complex, parse_complex_list};
use crate::error::{CliError, CliResult};

/// Environment variable holding the seed for randomized runs.
pub const SEED_VAR: &str = "WRIGHTLENS_SEED";

/// Accumulates `key=value` pairs for the `# params:` header line.
struct Params(Vec<String>);

impl Params {
    fn new(command: &str) -> Self {
        Self(vec![format!("command={command}")])
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.0.push(format!("{key}={value}"));
        self
    }

    fn class(&mut self, c: &ClassArgs) -> &mut Self {
        self.push("theta", num(c.theta))
            .push("lambda", num(c.lambda))
            .push("gamma", num(c.gamma))
            .push("relaxed", c.relaxed)
    }

    fn wright(&mut self, w: &WrightArgs) -> &mut Self {
        self.push("alpha", num(w.alpha)).push("beta", num(w.beta))
    }

    fn line(&self) -> String {
        format!("params: {}", self.0.join(" "))
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# {}", self.line())
    }
}

fn class_params(c: &ClassArgs) -> CliResult<ClassParams> {
    let cp = if c.relaxed {
        ClassParams::relaxed(c.theta, c.lambda, c.gamma)
    } else {
        ClassParams::new(c.theta, c.lambda, c.gamma)
    };
    Ok(cp?)
}

fn wright_params(w: &WrightArgs, n_max: usize) -> CliResult<WrightParams> {
    Ok(WrightParams::for_indices(w.alpha, w.beta, n_max)?)
}

fn grid_spec(g: &GridArgs) -> CliResult<GridSpec> {
    Ok(GridSpec::new(g.radii, g.angles, g.max_radius)?)
}

fn check_n_max(n_max: usize) -> CliResult<()> {
    if n_max == 0 {
        return Err(CliError::Param("--n-max must be at least 1".into()));
    }
    Ok(())
}

fn open_input(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn create_output(path: &Path) -> CliResult<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn schwarz_from(spec: &str) -> CliResult<SchwarzFunction> {
    let coeffs = parse_complex_list(spec).map_err(CliError::Param)?;
    Ok(SchwarzFunction::polynomial(coeffs)?)
}

pub fn wright(cmd: &WrightCmd, out: &mut dyn Write) -> CliResult<()> {
    let wp = WrightParams::new(cmd.wright.alpha, cmd.wright.beta)?;
    let v = wright_eval(&wp, cmd.z)?;
    Params::new("wright")
        .wright(&cmd.wright)
        .push("z", format_complex(cmd.z))
        .write(out)?;
    writeln!(out, "re,im,terms_used")?;
    writeln!(out, "{},{},{}", num(v.value.re), num(v.value.im), v.terms)?;
    Ok(())
}

pub fn phi_table_cmd(cmd: &PhiTableCmd, out: &mut dyn Write) -> CliResult<()> {
    check_n_max(cmd.n_max)?;
    let wp = wright_params(&cmd.wright, cmd.n_max)?;
    let table = phi_table(&wp, cmd.n_max)?;
    Params::new("phi-table")
        .wright(&cmd.wright)
        .push("n_max", cmd.n_max)
        .write(out)?;
    writeln!(out, "n,phi_n")?;
    for (i, p) in table.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, num(*p))?;
    }
    Ok(())
}

pub fn bounds(cmd: &BoundsCmd, out: &mut dyn Write) -> CliResult<()> {
    check_n_max(cmd.n_max)?;
    let cp = class_params(&cmd.class)?;
    let wp = wright_params(&cmd.wright, cmd.n_max)?;
    let rec = bound_sequence_recursive(&cp, &wp, cmd.n_max)?;
    let closed = bound_sequence_closed(&cp, &wp, cmd.n_max)?;
    Params::new("bounds")
        .class(&cmd.class)
        .wright(&cmd.wright)
        .push("n_max", cmd.n_max)
        .write(out)?;
    writeln!(out, "n,A_n_recursive,A_n_closed,rel_diff")?;
    for (i, (r, c)) in rec.values.iter().zip(&closed.values).enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            i + 1,
            num(*r),
            num(*c),
            num(((r - c) / c).abs())
        )?;
    }
    Ok(())
}

pub fn radius(cmd: &RadiusCmd, out: &mut dyn Write) -> CliResult<()> {
    let kind = match cmd.kind {
        KindArg::Star => RadiusKind::Starlike,
        KindArg::Convex => RadiusKind::Convex,
    };
    let mut params = Params::new("radius");
    params.push("kind", kind);
    let weights = if let Some(n) = cmd.extremal_n {
        params.push("dominant_n", n);
        Weights::single(n)?
    } else if let Some(path) = &cmd.weights {
        params.push("weights", path.display());
        Weights::Fixed(read_weights(open_input(path)?)?)
    } else {
        params.push("weights", "class_bounds").class(&cmd.class);
        Weights::ClassBounds(class_params(&cmd.class)?)
    };
    params.push("n_max", cmd.n_max).push("tol", num(cmd.tol));

    let solve = |rho: f64| -> CliResult<RadiusResult> {
        let q = RadiusQuery::new(rho, kind, weights.clone(), cmd.n_max, cmd.tol)?;
        let r = solve_radius(&q)?;
        if let Some(w) = r.truncation_warning {
            let msg = format!(
                "rho = {rho}: radius {} at n_max = {} but {} at n_max = {}",
                w.at_n_max,
                cmd.n_max,
                w.at_double,
                2 * cmd.n_max
            );
            if cmd.strict {
                return Err(CliError::Truncation(msg));
            }
            eprintln!("warning: truncation not converged, {msg}");
        }
        if r.unconstrained {
            eprintln!("note: rho = {rho}: constraint stays below 1 on the whole disk");
        }
        Ok(r)
    };

    if cmd.curve {
        if cmd.steps == 0 {
            return Err(CliError::Param("--steps must be at least 1".into()));
        }
        params.push("steps", cmd.steps);
        let rows = (0..cmd.steps)
            .map(|i| {
                let rho = i as f64 / cmd.steps as f64;
                solve(rho).map(|r| (rho, r.radius))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut file;
        let sink: &mut dyn Write = match &cmd.output {
            Some(path) => {
                file = create_output(path)?;
                &mut file
            }
            None => out,
        };
        params.write(sink)?;
        writeln!(sink, "rho,radius")?;
        for (rho, r) in rows {
            writeln!(sink, "{},{}", num(rho), num(r))?;
        }
        sink.flush()?;
    } else {
        params.push("rho", num(cmd.rho));
        let r = solve(cmd.rho)?;
        params.write(out)?;
        writeln!(out, "radius,bracket_lo,bracket_hi,n_max_used")?;
        writeln!(
            out,
            "{},{},{},{}",
            num(r.radius),
            num(r.bracket.0),
            num(r.bracket.1),
            r.truncation_used
        )?;
    }
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), num)
}

pub fn member(cmd: &MemberCmd, out: &mut dyn Write) -> CliResult<()> {
    let cp = class_params(&cmd.class)?;
    let grid = grid_spec(&cmd.grid)?;
    let f: LaurentSeries = read_coefficients(open_input(&cmd.coeffs)?)?;
    let wp = wright_params(&cmd.wright, f.truncation())?;
    let mut params = Params::new("member");
    params
        .push("coeffs", cmd.coeffs.display())
        .class(&cmd.class)
        .wright(&cmd.wright)
        .push("n_max", f.truncation())
        .push("grid", grid.describe());
    if let Some(k) = cmd.scan_eta {
        params.push("scan_eta", k);
    }

    let report = membership_check(&f, &cp, &wp, &grid)?;
    let bound = coefficient_bound_check(&f, &cp, &wp)?;
    let suff = sufficiency_predicate(&f, &cp, &wp, &grid);
    let scan = cmd
        .scan_eta
        .map(|k| convolution_scan(&f, &cp, &wp, k, &grid))
        .transpose()?;

    let violation = bound.first_violation();
    let vanishes = scan.as_ref().is_some_and(|s| s.vanishes);
    let verdict = if report.verdict == Verdict::NotMember || violation.is_some() || vanishes {
        Verdict::NotMember
    } else {
        report.verdict
    };

    params.write(out)?;
    writeln!(out, "verdict: {verdict}")?;
    writeln!(out, "grid_verdict: {}", report.verdict)?;
    writeln!(out, "min_re_tau: {}", num(report.min_re_tau))?;
    writeln!(out, "argmin_z: {}", format_complex(report.argmin_z))?;
    if let Some(d) = &report.diagnostic {
        writeln!(out, "grid_note: {d}")?;
    }
    match violation {
        Some(v) => writeln!(
            out,
            "coefficient_bounds: violated at n={} (|a_n|={} > A_n={})",
            v.n,
            num(v.abs_coeff),
            num(v.bound)
        )?,
        None => writeln!(
            out,
            "coefficient_bounds: satisfied for n<={}",
            bound.records.len()
        )?,
    }
    match suff {
        Ok(s) => writeln!(
            out,
            "sufficiency: max|R+1|={} bound={} holds={}",
            num(s.max_lhs),
            num(s.corollary_bound),
            s.holds
        )?,
        Err(e) => writeln!(out, "sufficiency: not evaluated ({e})")?,
    }
    if let Some(s) = &scan {
        writeln!(
            out,
            "convolution_scan: min_modulus={} at z={} eta={} vanishes={}",
            num(s.min_modulus),
            format_complex(s.argmin_z),
            format_complex(s.argmin_eta),
            s.vanishes
        )?;
    }

    if let Some(path) = &cmd.output {
        let mut file = create_output(path)?;
        params.write(&mut file)?;
        writeln!(file, "z_re,z_im,re_tau")?;
        for s in &report.samples {
            writeln!(
                file,
                "{},{},{}",
                num(s.z.re),
                num(s.z.im),
                fmt_opt(s.re_tau)
            )?;
        }
        writeln!(
            file,
            "# summary: verdict={} min_re_tau={} argmin_z={}",
            report.verdict,
            num(report.min_re_tau),
            format_complex(report.argmin_z)
        )?;
        file.flush()?;
    }
    Ok(())
}

fn note_obstruction(cp: &ClassParams, w: &SchwarzFunction) -> CliResult<()> {
    let g1 = constant_term_obstruction(cp, w)?;
    if g1.norm() > 0.0 {
        eprintln!(
            "note: w has linear coefficient {}; the generated f matches the class relation at every \
             positive power but not at z^0, so tau(f) differs from (1+w)/(1-w)",
            format_complex(w.linear_coeff())
        );
    }
    Ok(())
}

pub fn generate(cmd: &GenerateCmd, out: &mut dyn Write) -> CliResult<()> {
    check_n_max(cmd.n_max)?;
    let cp = class_params(&cmd.class)?;
    let wp = wright_params(&cmd.wright, cmd.n_max)?;
    let w = schwarz_from(&cmd.schwarz)?;
    note_obstruction(&cp, &w)?;
    let f = schwarz_generate(&cp, &wp, &w, cmd.n_max)?;
    let report = coefficient_bound_check(&f, &cp, &wp)?;

    let mut params = Params::new("generate");
    params
        .push("schwarz", format!("\"{}\"", cmd.schwarz))
        .class(&cmd.class)
        .wright(&cmd.wright)
        .push("n_max", cmd.n_max);
    params.write(out)?;
    writeln!(out, "n,abs_a_n,A_n,ratio,within_bound")?;
    for r in &report.records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            num(r.abs_coeff),
            num(r.bound),
            num(r.abs_coeff / r.bound),
            r.satisfied
        )?;
    }
    if let Some(path) = &cmd.output {
        let mut file = create_output(path)?;
        write_coefficients(&mut file, &f, &[params.line()])?;
        file.flush()?;
    }
    Ok(())
}

fn seed_from_env() -> CliResult<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Param(format!("{SEED_VAR} must be an unsigned integer, got `{s}`"))
        }),
        Err(_) => Ok(0),
    }
}

pub fn verify_identities(cmd: &VerifyCmd, out: &mut dyn Write) -> CliResult<()> {
    check_n_max(cmd.n_max)?;
    let cp = class_params(&cmd.class)?;
    let wp = wright_params(&cmd.wright, cmd.n_max)?;
    let mut params = Params::new("verify-identities");
    let w = match &cmd.schwarz {
        Some(spec) => {
            params.push("schwarz", format!("\"{spec}\""));
            schwarz_from(spec)?
        }
        None => {
            let seed = seed_from_env()?;
            params.push("seed", seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = SchwarzFunction::random_admissible(&mut rng, 4, 0.5)?;
            let coeffs: Vec<String> = w.terms().map(|(_, c)| format_complex(c)).collect();
            params.push("schwarz", format!("\"{}\"", coeffs.join(",")));
            w
        }
    };
    params
        .class(&cmd.class)
        .wright(&cmd.wright)
        .push("n_max", cmd.n_max);

    let f = schwarz_generate(&cp, &wp, &w, cmd.n_max)?;
    let tau = caratheodory_series(&w, cmd.n_max + 1)?;
    let oracle = series_identity_oracle(&f, &tau, &cp, &wp)?;
    let extraction = extraction_residuals(&f, &tau, &cp, &wp)?;

    params.write(out)?;
    for r in oracle.iter().filter(|r| r.power < 1) {
        writeln!(
            out,
            "# oracle residual at z^{}: {}",
            r.power,
            num(r.residual.norm())
        )?;
    }
    writeln!(out, "n,oracle_residual,direct_residual,printed_residual")?;
    let zero = Complex64::new(0.0, 0.0);
    for e in &extraction {
        let o = oracle
            .iter()
            .find(|r| r.power == e.n as i64)
            .map_or(zero, |r| r.residual);
        writeln!(
            out,
            "{},{},{},{}",
            e.n,
            num(o.norm()),
            num(e.direct.norm()),
            num(e.printed.norm())
        )?;
    }
    Ok(())
}
