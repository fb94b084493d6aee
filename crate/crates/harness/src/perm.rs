//! Parsing of ad-hoc generator lists such as `"(1,2,3)(4,5);(1,2)"`.
//!
//! Generators are separated by `;`. Each is either cycle notation on the
//! points `1..=d` or a bracketed 0-based image list like `[1,2,0]`. The
//! degree is the largest point mentioned.

use charseries::PermSpec;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PermParseError {
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("points in cycle notation start at 1")]
    ZeroPoint,
    #[error("point {0} appears twice")]
    Repeated(usize),
    #[error("unbalanced parentheses in {0:?}")]
    Unbalanced(String),
    #[error("image list {0:?} is not a permutation")]
    NotPermutation(String),
}

enum Parsed {
    Cycles(Vec<Vec<usize>>),
    Images(Vec<usize>),
}

fn numbers(s: &str) -> Result<Vec<usize>, PermParseError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| PermParseError::BadNumber(t.to_string()))
        })
        .collect()
}

fn parse_one(s: &str) -> Result<Parsed, PermParseError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        return Ok(Parsed::Images(numbers(inner)?));
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| PermParseError::Unbalanced(s.to_string()))?;
        let close = open
            .find(')')
            .ok_or_else(|| PermParseError::Unbalanced(s.to_string()))?;
        let cycle = numbers(&open[..close])?;
        if cycle.contains(&0) {
            return Err(PermParseError::ZeroPoint);
        }
        cycles.push(cycle.into_iter().map(|p| p - 1).collect());
        rest = open[close + 1..].trim_start();
    }
    Ok(Parsed::Cycles(cycles))
}

pub fn parse_generators(text: &str) -> Result<PermSpec, PermParseError> {
    let parsed: Vec<Parsed> = text
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(parse_one)
        .collect::<Result<_, _>>()?;
    let degree = parsed
        .iter()
        .map(|p| match p {
            Parsed::Cycles(cs) => cs.iter().flatten().map(|&x| x + 1).max().unwrap_or(0),
            Parsed::Images(im) => im.len(),
        })
        .max()
        .unwrap_or(0)
        .max(1);
    let mut gens = Vec::with_capacity(parsed.len());
    for p in parsed {
        let images = match p {
            Parsed::Images(mut im) => {
                let mut sorted = im.clone();
                sorted.sort_unstable();
                if sorted.iter().enumerate().any(|(i, &x)| i != x) {
                    return Err(PermParseError::NotPermutation(format!("{im:?}")));
                }
                im.extend(im.len()..degree);
                im
            }
            Parsed::Cycles(cycles) => {
                let mut seen = vec![false; degree];
                for &x in cycles.iter().flatten() {
                    if std::mem::replace(&mut seen[x], true) {
                        return Err(PermParseError::Repeated(x + 1));
                    }
                }
                let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
                PermSpec::cycles_to_images(degree, &refs)
            }
        };
        gens.push(images);
    }
    Ok(PermSpec::new(degree, gens))
}
