use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use compcode_core::channels::Measurement;
use compcode_core::coding::{run_error_experiment, ErrorStats, MIN_TRIALS};
use compcode_core::field::FpVector;
use compcode_core::protocols::{
    butterfly_run, caf_batch, colluding_servers_learn_theta, df_slot_accounting, spir_privacy_audit, CompLink,
    SpirSession, Transport,
};
use compcode_core::rates::{comp_rate, sweep, threshold, Detection};
use compcode_core::Error as CoreError;

use crate::args::{Cli, Command, Flags};
use crate::config::{self, DEFAULT_SEED};
use crate::error::{invalid, CliError};
use crate::format::sig;

type Result<T> = std::result::Result<T, CliError>;
type Exec = fn(&Flags) -> Result<String>;

const CSV_HEADER: &str =
    "alpha2,c_sd,comp_lower,comp_onoff,comp_homodyne,comp_upper,gain_collective,gain_onoff,gain_homodyne";
const DIGITS: usize = 9;

pub fn run(cli: Cli) -> Result<()> {
    let (name, flags, exec): (&str, Flags, Exec) = match cli.command {
        Command::Rates(f) => ("rates", f, cmd_rates),
        Command::Thresholds(f) => ("thresholds", f, cmd_thresholds),
        Command::SimulateComp(f) => ("simulate-comp", f, cmd_simulate),
        Command::Spir(f) => ("spir", f, cmd_spir),
        Command::Relay(f) => ("relay", f, cmd_relay),
        Command::Butterfly(f) => ("butterfly", f, cmd_butterfly),
    };
    let flags = config::resolve(flags)?;
    let text = exec(&flags).map_err(|e| match e {
        CliError::Validation(msg) => invalid(format!("{name}: {msg}")),
        other => other,
    })?;
    emit(flags.out.as_deref(), &text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "<stdout>".into(), source })
        }
    }
}

/// Parameter errors from the core are the caller's fault.
fn core_validation(e: CoreError) -> CliError {
    match e {
        CoreError::Domain { .. }
        | CoreError::InvalidParameter(_)
        | CoreError::LengthMismatch { .. }
        | CoreError::SearchTooLarge { .. } => invalid(e.to_string()),
        other => CliError::Core(other),
    }
}

fn seed(f: &Flags) -> u64 {
    f.seed.unwrap_or(DEFAULT_SEED)
}

fn alpha2(f: &Flags, default: f64) -> Result<f64> {
    let a = f.alpha2.unwrap_or(default);
    if !(a >= 0.0 && a.is_finite()) {
        return Err(invalid(format!("alpha2 must be a finite non-negative number, got {a}")));
    }
    Ok(a)
}

fn detection(f: &Flags, default: Detection) -> Result<Detection> {
    match &f.detection {
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| invalid(format!("unknown detection `{s}` (collective, onoff, homodyne)"))),
    }
}

fn measured(d: Detection) -> Result<Measurement> {
    d.measurement().ok_or_else(|| {
        invalid("collective detection has no single-symbol measurement to simulate; use onoff or homodyne")
    })
}

fn trials(f: &Flags, default: u64) -> Result<usize> {
    let t = f.trials.unwrap_or(default);
    if t < MIN_TRIALS as u64 {
        return Err(invalid(format!("trials must be at least {MIN_TRIALS}, got {t}")));
    }
    usize::try_from(t).map_err(|_| invalid("trials too large"))
}

/// `(n, ell)` with `ell` defaulting to `n / 2`.
fn block(f: &Flags, default_n: usize) -> Result<(usize, usize)> {
    let n = f.n.unwrap_or(default_n);
    let ell = f.ell.unwrap_or(n / 2);
    check_block(n, ell)?;
    Ok((n, ell))
}

fn check_block(n: usize, ell: usize) -> Result<()> {
    if n > 64 {
        return Err(invalid(format!("n must be at most 64, got {n}")));
    }
    if ell == 0 || ell >= n {
        return Err(invalid(format!("need 0 < ell < n, got ell={ell}, n={n}")));
    }
    Ok(())
}

enum TransportKind {
    Noiseless,
    Comp,
}

fn transport_kind(f: &Flags) -> Result<TransportKind> {
    match f.transport.as_deref() {
        None | Some("noiseless") => Ok(TransportKind::Noiseless),
        Some("comp") => Ok(TransportKind::Comp),
        Some(other) => Err(invalid(format!("unknown transport `{other}` (noiseless, comp)"))),
    }
}

fn bits(v: &FpVector) -> String {
    v.coords().iter().map(|c| char::from_digit(*c, 10).unwrap_or('?')).collect()
}

fn grid(f: &Flags) -> Result<Vec<f64>> {
    let start = f.alpha2_start.unwrap_or(0.01);
    let stop = f.alpha2_stop.unwrap_or(6.0);
    let count = f.alpha2_count.unwrap_or(200);
    let log = f.log_grid.unwrap_or(true);
    if count == 0 {
        return Err(invalid("alpha2-count must be at least 1"));
    }
    if !(start.is_finite() && stop.is_finite() && start >= 0.0 && stop >= start) {
        return Err(invalid(format!("need 0 <= alpha2-start <= alpha2-stop, got {start}..{stop}")));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    if stop == start {
        return Err(invalid("a grid of several points needs alpha2-stop > alpha2-start"));
    }
    if log && start == 0.0 {
        return Err(invalid("a log-spaced grid needs alpha2-start > 0 (use --log-grid false)"));
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / last;
            match (i, log) {
                (0, _) => start,
                (i, _) if i == count - 1 => stop,
                (_, true) => start * (stop / start).powf(t),
                (_, false) => start + (stop - start) * t,
            }
        })
        .collect())
}

fn cmd_rates(f: &Flags) -> Result<String> {
    let curve = sweep(&grid(f)?).map_err(core_validation)?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in curve.points() {
        let fields = [
            p.alpha2,
            p.c_sd,
            p.comp_lower,
            p.comp_onoff,
            p.comp_homodyne,
            p.comp_upper,
            p.gains[0],
            p.gains[1],
            p.gains[2],
        ];
        let row: Vec<String> = fields.iter().map(|&x| sig(x, DIGITS)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn cmd_thresholds(_: &Flags) -> Result<String> {
    let mut out = String::from("detection,threshold_alpha2\n");
    for d in Detection::ALL {
        writeln!(out, "{},{:.4}", d.name(), threshold(d)?).unwrap();
    }
    Ok(out)
}

struct Report(String);

impl Report {
    fn new(command: &str) -> Self {
        Report(format!("command={command}\n"))
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.0, "{key}={value}").unwrap();
        self
    }

    fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.kv(key, sig(value, DIGITS))
    }

    fn summary(mut self, lines: &[String]) -> String {
        self.0.push('\n');
        for l in lines {
            writeln!(self.0, "# {l}").unwrap();
        }
        self.0
    }
}

fn error_stats(r: &mut Report, s: &ErrorStats) {
    r.kv("trials", s.trials)
        .kv("errors", s.errors)
        .num("p_hat", s.p_hat)
        .num("ci_low", s.wilson_ci.0)
        .num("ci_high", s.wilson_ci.1);
}

fn cmd_simulate(f: &Flags) -> Result<String> {
    let det = detection(f, Detection::OnOff)?;
    let m = measured(det)?;
    let a = alpha2(f, 1.5)?;
    let (n, ell) = block(f, 64)?;
    let trials = trials(f, 1000)?;
    let seed = seed(f);
    let stats = run_error_experiment(m, a, n, ell, trials, seed).map_err(core_validation)?;
    let capacity = comp_rate(det, a)?;
    let mut r = Report::new("simulate-comp");
    r.kv("detection", det.name()).num("alpha2", a).kv("n", n).kv("ell", ell).num("rate", stats.rate());
    r.num("capacity", capacity).kv("seed", seed);
    error_stats(&mut r, &stats);
    let side = if stats.rate() < capacity { "below" } else { "above" };
    Ok(r.summary(&[
        format!(
            "{} block errors in {} trials: p_hat = {} (95% CI {} to {})",
            stats.errors,
            stats.trials,
            sig(stats.p_hat, 4),
            sig(stats.wilson_ci.0, 4),
            sig(stats.wilson_ci.1, 4)
        ),
        format!("code rate {} is {side} the {} COMP rate {}", sig(stats.rate(), 4), det.name(), sig(capacity, 6)),
    ]))
}

fn cmd_spir(f: &Flags) -> Result<String> {
    let k = f.k_files.unwrap_or(3);
    let ell = f.file_len.unwrap_or(8);
    let theta = f.theta.unwrap_or(1);
    let seed = seed(f);
    let runs = trials(f, 8192)?;
    if k == 0 || ell == 0 {
        return Err(invalid("k-files and file-len must be at least 1"));
    }
    if ell > 16 || k > 16 {
        return Err(invalid("k-files and file-len are limited to 16"));
    }
    if theta == 0 || theta > k {
        return Err(invalid(format!("theta must lie in 1..={k}, got {theta}")));
    }
    let kind = transport_kind(f)?;
    let mut r = Report::new("spir");
    r.kv("k_files", k).kv("file_len", ell).kv("theta", theta).kv("seed", seed);
    let transport = match kind {
        TransportKind::Noiseless => {
            r.kv("transport", "noiseless");
            Transport::Noiseless
        }
        TransportKind::Comp => {
            let det = detection(f, Detection::OnOff)?;
            let a = alpha2(f, 1.5)?;
            let n = f.n.unwrap_or(2 * ell);
            check_block(n, ell)?;
            r.kv("transport", "comp").kv("detection", det.name()).num("alpha2", a).kv("n", n);
            Transport::Comp(CompLink::new(measured(det)?, a, ell, n, seed).map_err(core_validation)?)
        }
    };
    let session = SpirSession::random(k, ell, seed)?;
    let one = session.run(theta, &transport, seed)?;
    r.kv("q1", bits(&one.q1)).kv("q2", bits(&one.q2)).kv("decoded", bits(&one.decoded));
    r.kv("target", bits(&session.files()[theta - 1])).kv("decoded_correct", one.succeeded());
    r.kv("collusion_learns_theta", colluding_servers_learn_theta(&one.q1, &one.q2) == Some(theta));

    let (transcripts, tally) = session.batch(runs, &transport, seed.wrapping_add(1))?;
    r.kv("runs", tally.runs).kv("successes", tally.successes).num("success_fraction", tally.fraction());
    let audit_line = match spir_privacy_audit(&transcripts) {
        Ok(audit) => {
            r.kv("audit", if audit.passes() { "pass" } else { "fail" });
            r.num("audit_min_p", audit.min_p_value()).kv("identity_failures", audit.identity_failures);
            if let Some(exact) = audit.exact_query_privacy {
                r.kv("exact_query_privacy", exact);
            }
            format!(
                "privacy audit {} (smallest p-value {})",
                if audit.passes() { "passed" } else { "FAILED" },
                sig(audit.min_p_value(), 3)
            )
        }
        Err(CoreError::InsufficientSamples { expected }) => {
            r.kv("audit", "insufficient-samples");
            format!("privacy audit skipped: only {} runs expected per cell; raise --trials", sig(expected, 3))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(r.summary(&[
        format!("retrieved file {theta} of {k}: {}", if one.succeeded() { "correct" } else { "WRONG" }),
        format!("{} of {} batch runs decoded the requested file", tally.successes, tally.runs),
        audit_line,
    ]))
}

fn cmd_relay(f: &Flags) -> Result<String> {
    let det = detection(f, Detection::Collective)?;
    let a = alpha2(f, 1.0)?;
    let acc = df_slot_accounting(a, det).map_err(core_validation)?;
    let mut r = Report::new("relay");
    r.kv("detection", det.name()).num("alpha2", a);
    r.num("caf_rate", acc.caf.uplink_rate_used).num("df_rate", acc.df.uplink_rate_used);
    r.num("df_same_class_rate", acc.df_same_class.uplink_rate_used);
    r.num("caf_uses_per_bit", acc.caf.uplink_uses_per_bit).num("df_uses_per_bit", acc.df.uplink_uses_per_bit);
    r.num("ratio", acc.caf_over_df).num("df_over_caf", acc.df_over_caf);
    r.num("gain_percent", acc.gain).num("gain_same_class_percent", acc.gain_same_class);
    let mut lines = vec![
        format!(
            "CAF needs {} uplink uses per bit against {} for DF (ratio {})",
            sig(acc.caf.uplink_uses_per_bit, 5),
            sig(acc.df.uplink_uses_per_bit, 5),
            sig(acc.caf_over_df, 4)
        ),
        format!(
            "COMP gain over decode-and-forward: {}%{}",
            sig(acc.gain, 4),
            if acc.gain < 0.0 { " (below threshold, DF is better)" } else { "" }
        ),
    ];
    if let Some(m) = det.measurement() {
        let (n, ell) = block(f, 64)?;
        let runs = trials(f, 1000)?;
        let seed = seed(f);
        let link = CompLink::new(m, a, ell, n, seed).map_err(core_validation)?;
        let tally = caf_batch(&link, runs, seed.wrapping_add(1)).map_err(core_validation)?;
        r.kv("n", n).kv("ell", ell).kv("seed", seed).kv("runs", tally.runs).kv("successes", tally.successes);
        r.num("success_fraction", tally.fraction());
        lines.push(format!(
            "simulated CAF exchanges at rate {}: {} of {} correct",
            sig(link.rate(), 4),
            tally.successes,
            tally.runs
        ));
    }
    Ok(r.summary(&lines))
}

fn cmd_butterfly(f: &Flags) -> Result<String> {
    let ell = f.ell.unwrap_or(8);
    let runs = trials(f, 1000)?;
    let seed = seed(f);
    let mut r = Report::new("butterfly");
    let transport = match transport_kind(f)? {
        TransportKind::Noiseless => {
            if ell == 0 {
                return Err(invalid("ell must be at least 1"));
            }
            r.kv("transport", "noiseless");
            Transport::Noiseless
        }
        TransportKind::Comp => {
            let det = detection(f, Detection::OnOff)?;
            let a = alpha2(f, 1.5)?;
            let n = f.n.unwrap_or(2 * ell);
            check_block(n, ell)?;
            r.kv("transport", "comp").kv("detection", det.name()).num("alpha2", a).kv("n", n);
            Transport::Comp(CompLink::new(measured(det)?, a, ell, n, seed).map_err(core_validation)?)
        }
    };
    let rep = butterfly_run(&transport, ell, runs, seed).map_err(core_validation)?;
    r.kv("ell", ell).kv("seed", seed).kv("trials", runs);
    r.kv("v5_correct", rep.v5.successes).kv("v6_correct", rep.v6.successes).kv("both_correct", rep.both.successes);
    r.num("success_fraction", rep.both.fraction());
    Ok(r.summary(&[format!(
        "both sinks recovered the opposite source in {} of {} rounds",
        rep.both.successes, rep.both.runs
    )]))
}
