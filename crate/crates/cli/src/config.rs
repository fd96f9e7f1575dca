//! Flat `key=value` settings files and their merge with command-line flags.
//!
//! Keys are the long flag names with or without the leading dashes; `_` and
//! `-` are interchangeable. Blank lines and lines starting with `#` are
//! ignored. Flags given on the command line take precedence.

use std::str::FromStr;

use crate::args::Flags;
use crate::error::{invalid, CliError};

/// Seed used when neither the command line nor the config file sets one.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// `flags` with gaps filled from the file named by `--config`, if any.
pub fn resolve(flags: Flags) -> Result<Flags, CliError> {
    let Some(path) = flags.config.clone() else {
        return Ok(flags);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::ConfigRead { path: path.clone(), source })?;
    let file = parse(&text).map_err(|e| match e {
        CliError::Validation(msg) => invalid(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok(merge(flags, file))
}

fn merge(primary: Flags, fallback: Flags) -> Flags {
    Flags {
        alpha2_start: primary.alpha2_start.or(fallback.alpha2_start),
        alpha2_stop: primary.alpha2_stop.or(fallback.alpha2_stop),
        alpha2_count: primary.alpha2_count.or(fallback.alpha2_count),
        log_grid: primary.log_grid.or(fallback.log_grid),
        alpha2: primary.alpha2.or(fallback.alpha2),
        detection: primary.detection.or(fallback.detection),
        transport: primary.transport.or(fallback.transport),
        n: primary.n.or(fallback.n),
        ell: primary.ell.or(fallback.ell),
        trials: primary.trials.or(fallback.trials),
        seed: primary.seed.or(fallback.seed),
        k_files: primary.k_files.or(fallback.k_files),
        theta: primary.theta.or(fallback.theta),
        file_len: primary.file_len.or(fallback.file_len),
        out: primary.out.or(fallback.out),
        config: primary.config,
    }
}

pub fn parse(text: &str) -> Result<Flags, CliError> {
    let mut f = Flags::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| invalid(format!("line {}: expected key=value", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        let at = |e: String| invalid(format!("line {}: {key}: {e}", lineno + 1));
        match key.as_str() {
            "alpha2-start" => set(&mut f.alpha2_start, value).map_err(at)?,
            "alpha2-stop" => set(&mut f.alpha2_stop, value).map_err(at)?,
            "alpha2-count" => set(&mut f.alpha2_count, value).map_err(at)?,
            "log-grid" => set(&mut f.log_grid, value).map_err(at)?,
            "alpha2" => set(&mut f.alpha2, value).map_err(at)?,
            "detection" => set(&mut f.detection, value).map_err(at)?,
            "transport" => set(&mut f.transport, value).map_err(at)?,
            "n" => set(&mut f.n, value).map_err(at)?,
            "ell" => set(&mut f.ell, value).map_err(at)?,
            "trials" => set(&mut f.trials, value).map_err(at)?,
            "seed" => set(&mut f.seed, value).map_err(at)?,
            "k-files" => set(&mut f.k_files, value).map_err(at)?,
            "theta" => set(&mut f.theta, value).map_err(at)?,
            "file-len" => set(&mut f.file_len, value).map_err(at)?,
            "out" => set(&mut f.out, value).map_err(at)?,
            _ => return Err(invalid(format!("line {}: unknown key `{key}`", lineno + 1))),
        }
    }
    Ok(f)
}

fn set<T: FromStr>(slot: &mut Option<T>, value: &str) -> Result<(), String>
where
    T::Err: std::fmt::Display,
{
    if slot.is_some() {
        return Err("set twice".into());
    }
    *slot = Some(value.parse().map_err(|e: T::Err| format!("cannot parse `{value}`: {e}"))?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::path::Path;

    use super::*;

    #[test]
    fn parses_keys_in_both_spellings() {
        let f = parse("# grid\nalpha2_start = 0.5\n--alpha2-stop=2\nlog-grid=false\nseed=7\nout=x.csv\n").unwrap();
        assert_eq!(f.alpha2_start, Some(0.5));
        assert_eq!(f.alpha2_stop, Some(2.0));
        assert_eq!(f.log_grid, Some(false));
        assert_eq!(f.seed, Some(7));
        assert_eq!(f.out.as_deref(), Some(Path::new("x.csv")));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse("bogus=1").is_err());
        assert!(parse("seed").is_err());
        assert!(parse("seed=abc").is_err());
        assert!(parse("seed=1\nseed=2").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let flags = Flags { seed: Some(1), ..Flags::default() };
        let file = Flags { seed: Some(2), n: Some(32), ..Flags::default() };
        let m = merge(flags, file);
        assert_eq!((m.seed, m.n), (Some(1), Some(32)));
    }
}
