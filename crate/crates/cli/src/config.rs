//! `run --config file.toml` is rewritten into an ordinary argument list
//! before parsing, so a config file is validated by exactly the same rules
//! as the command line. A config looks like
//!
//! ```toml
//! command = "branch-scan"
//! seed = 7
//!
//! [params]
//! x-prime = 1
//! power = 2
//! p-max = 1000
//! format = "csv"
//! ```
//!
//! Unknown keys become unknown flags and are rejected by the parser.

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use toml::Value;

pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(pos) = args.iter().position(|a| a == "run") else {
        return Ok(args);
    };
    // only a leading `run` subcommand is expanded
    if args[1..pos]
        .iter()
        .any(|a| !a.to_string_lossy().starts_with('-'))
    {
        return Ok(args);
    }
    let rest = &args[pos + 1..];
    let path = match rest {
        [flag, path] if flag == "--config" => path.clone(),
        [single] if single.to_string_lossy().starts_with("--config=") => {
            OsString::from(&single.to_string_lossy()["--config=".len()..])
        }
        _ => return Ok(args),
    };
    let mut expanded = args[..pos].to_vec();
    expanded.extend(config_args(Path::new(&path))?);
    Ok(expanded)
}

fn config_args(path: &Path) -> Result<Vec<OsString>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let table: toml::Table = text
        .parse()
        .with_context(|| format!("parsing config {}", path.display()))?;
    to_args(&table)
}

pub fn to_args(table: &toml::Table) -> Result<Vec<OsString>> {
    let mut command = None;
    let mut out = Vec::new();
    for (key, value) in table {
        match (key.as_str(), value) {
            ("command", Value::String(c)) => command = Some(c.clone()),
            ("command", _) => bail!("`command` must be a string"),
            ("params", Value::Table(params)) => {
                for (k, v) in params {
                    push_flag(&mut out, k, v)?;
                }
            }
            ("params", _) => bail!("`params` must be a table"),
            ("seed", v) => push_flag(&mut out, key, v)?,
            (other, _) => bail!("unknown config key `{other}`"),
        }
    }
    let Some(command) = command else {
        bail!("config has no `command`");
    };
    if command == "run" {
        bail!("a config cannot invoke `run`");
    }
    let mut args = vec![OsString::from(command)];
    args.extend(out);
    Ok(args)
}

fn push_flag(out: &mut Vec<OsString>, key: &str, value: &Value) -> Result<()> {
    let flag = format!("--{}", key.replace('_', "-"));
    let text = match value {
        Value::Boolean(true) => {
            out.push(flag.into());
            return Ok(());
        }
        Value::Boolean(false) => return Ok(()),
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => f.to_string(),
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Result<Vec<_>>>()?
            .join(","),
        _ => bail!("unsupported value for `{key}`"),
    };
    out.push(format!("{flag}={text}").into());
    Ok(())
}

fn scalar(v: &Value) -> Result<String> {
    Ok(match v {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => f.to_string(),
        _ => bail!("arrays may only hold strings and numbers"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(text: &str) -> Result<Vec<String>> {
        let t: toml::Table = text.parse().unwrap();
        Ok(to_args(&t)?
            .into_iter()
            .map(|a| a.into_string().unwrap())
            .collect())
    }

    #[test]
    fn expands_params_in_key_order() {
        let a = args(
            "command = \"difftable\"\n[params]\nseq = [0, 1, 8, 27]\norder = 3\nformat = \"csv\"\n",
        )
        .unwrap();
        assert_eq!(
            a,
            ["difftable", "--format=csv", "--order=3", "--seq=0,1,8,27"]
        );
    }

    #[test]
    fn rejects_unknown_top_level_keys() {
        assert!(args("command = \"identity\"\nfoo = 1\n").is_err());
        assert!(args("[params]\npower = 2\n").is_err());
        assert!(args("command = \"run\"\n").is_err());
    }

    #[test]
    fn booleans_and_negatives() {
        let a =
            args("command = \"deriv\"\nseed = 3\n[params]\nx0 = -1.5\nflag = true\noff = false\n")
                .unwrap();
        assert_eq!(a, ["deriv", "--flag", "--x0=-1.5", "--seed=3"]);
    }
}
