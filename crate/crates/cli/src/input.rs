//! Group and extension inputs.
//!
//! A group argument is a path to a file in the plain-text group format or a
//! built-in name such as `symmetric:3`. Extension files look like
//!
//! ```text
//! extension
//! pi_big semidirect:3:2:2
//! gamma 0 1 2
//! p cyclic:2 0 0 0 1 1 1
//! s 0 3
//! ```
//!
//! where `p` lists the image of every element of `pi_big` and `s` the image
//! of every element of the quotient. Group paths inside an extension file are
//! resolved relative to the file.

use std::fs;
use std::path::Path;

use bitorsor_kit::devissage::SplitExtension;
use bitorsor_kit::group::builtin::{by_name, semidirect_cyclic_full};
use bitorsor_kit::group::{content_lines, parse_group_text, parse_index, tokens, ParseError};
use bitorsor_kit::{Error, FiniteGroup, GroupHom, Subgroup};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A file path if one exists, otherwise a built-in name.
pub fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    load_group_relative(arg, Path::new("."))
}

fn load_group_relative(arg: &str, base: &Path) -> Result<FiniteGroup, CliError> {
    let path = base.join(arg);
    if path.is_file() {
        let text = read_file(&path)?;
        let parsed = parse_group_text(&text).map_err(Error::from)?;
        return Ok(parsed.build().map_err(Error::from)?);
    }
    Ok(by_name(arg).map_err(Error::from)?)
}

/// `N:M:K`, the split extension `Z/N ⋊ Z/M` with `1 ↦ K` on `Z/N`.
pub fn semidirect_extension(spec: &str) -> Result<SplitExtension, CliError> {
    let nums: Vec<usize> = spec
        .split(':')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("expected N:M:K, got `{spec}`")))?;
    let [n, m, k] = nums[..] else {
        return Err(CliError::Usage(format!("expected N:M:K, got `{spec}`")));
    };
    let sd = semidirect_cyclic_full(n, m, k).map_err(Error::from)?;
    Ok(SplitExtension::from_semidirect(&sd).map_err(Error::from)?)
}

pub fn load_extension(path: &Path) -> Result<SplitExtension, CliError> {
    let text = read_file(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_extension(&text, base)
}

pub fn parse_extension(text: &str, base: &Path) -> Result<SplitExtension, CliError> {
    let mut lines = content_lines(text);
    let perr = |line, col, msg: &str| CliError::Domain(ParseError::new(line, col, msg).into());
    match lines.next() {
        Some((_, _, "extension")) => {}
        Some((line, col, _)) => return Err(perr(line, col, "expected `extension` header")),
        None => return Err(perr(1, 1, "empty extension file")),
    }
    let (mut pi, mut gamma, mut p, mut s) = (None, None, None, None);
    for (line, col, text) in lines {
        let toks = tokens(text, col);
        let (key_col, key) = toks[0];
        let indices = |from: usize| -> Result<Vec<usize>, CliError> {
            toks[from..]
                .iter()
                .map(|&t| parse_index(line, t).map_err(|e| CliError::Domain(e.into())))
                .collect()
        };
        let group_at = |i: usize| -> Result<FiniteGroup, CliError> {
            let (c, name) = *toks
                .get(i)
                .ok_or_else(|| perr(line, key_col, "missing group"))?;
            load_group_relative(name, base).map_err(|e| match e {
                CliError::Domain(err) => perr(line, c, &err.to_string()),
                other => other,
            })
        };
        match key {
            "pi_big" if toks.len() == 2 => pi = Some(group_at(1)?),
            "gamma" => gamma = Some((line, key_col, indices(1)?)),
            "p" => p = Some((line, key_col, group_at(1)?, indices(2)?)),
            "s" => s = Some((line, key_col, indices(1)?)),
            _ => {
                return Err(perr(
                    line,
                    key_col,
                    "expected `pi_big <group>`, `gamma`, `p <group> <map>` or `s <map>`",
                ))
            }
        }
    }
    let pi = pi.ok_or_else(|| perr(1, 1, "missing `pi_big` line"))?;
    let (gl, gc, gamma) = gamma.ok_or_else(|| perr(1, 1, "missing `gamma` line"))?;
    let (pl, pc, small, pmap) = p.ok_or_else(|| perr(1, 1, "missing `p` line"))?;
    let (sl, sc, smap) = s.ok_or_else(|| perr(1, 1, "missing `s` line"))?;
    let at = |line, col| move |e: bitorsor_kit::GroupError| perr(line, col, &e.to_string());
    let gamma = Subgroup::new(&pi, &gamma).map_err(at(gl, gc))?;
    let p = GroupHom::new(pi.clone(), small.clone(), pmap).map_err(at(pl, pc))?;
    let s = GroupHom::new(small, pi, smap).map_err(at(sl, sc))?;
    Ok(SplitExtension::new(gamma, p, s).map_err(Error::from)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_s3_extension() {
        let text =
            "extension\npi_big semidirect:3:2:2\ngamma 0 1 2\np cyclic:2 0 0 0 1 1 1\ns 0 3\n";
        let e = parse_extension(text, Path::new(".")).unwrap();
        assert_eq!(e.pi_big().order(), 6);
        assert_eq!(e.gamma().order(), 3);
    }

    #[test]
    fn reports_positions() {
        let text = "extension\npi_big semidirect:3:2:2\ngamma 0 x 2\n";
        let err = parse_extension(text, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("line 3, column 9"), "{err}");
        let text = "extension\npi_big semidirect:3:2:2\ngamma 0 1\np cyclic:2 0 0 0 1 1 1\ns 0 3\n";
        let err = parse_extension(text, Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("line 3, column 1"), "{err}");
    }

    #[test]
    fn semidirect_spec() {
        assert_eq!(semidirect_extension("4:2:3").unwrap().pi_big().order(), 8);
        assert!(matches!(
            semidirect_extension("4:2"),
            Err(CliError::Usage(_))
        ));
    }
}
