//! Text exchange formats.
//!
//! Matrix exchange: a header line `p e n frob`, then `n` lines of `n`
//! elements separated by spaces, each element the comma-separated list of
//! its `e` polynomial residues (constant term first). Quadratic spaces use
//! the same layout for the upper-triangular Gram matrix, preceded by a
//! `GRAM-UT` tag line. Vector sets hold one vector per line, sorted.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, ensure, Context, Result};
use omfact_core::permgrp::ChainSummary;
use omfact_core::{Fe, Field, FieldRef, QuadraticSpace, Semilinear};

pub const GRAM_TAG: &str = "GRAM-UT";

fn element(f: &Field, a: Fe) -> String {
    let c = f.coeffs(a);
    c.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_element(f: &Field, tok: &str) -> Result<Fe> {
    let c: Vec<u8> = tok
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u8>()
                .with_context(|| format!("bad residue in {tok:?}"))
        })
        .collect::<Result<_>>()?;
    f.from_coeffs(&c)
        .map_err(|e| anyhow!("element {tok:?}: {e}"))
}

/// One vector as space-separated elements.
pub fn vector_line(f: &Field, v: &[Fe]) -> String {
    v.iter()
        .map(|&a| element(f, a))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_vector(f: &Field, n: usize, line: &str) -> Result<Vec<Fe>> {
    let v: Vec<Fe> = line
        .split_whitespace()
        .map(|t| parse_element(f, t))
        .collect::<Result<_>>()?;
    ensure!(v.len() == n, "expected {n} entries, found {}", v.len());
    Ok(v)
}

fn matrix_body(f: &Field, n: usize, mat: &[Fe], frob: u32) -> String {
    let mut s = format!("{} {} {} {}\n", f.p(), f.degree(), n, frob);
    for row in mat.chunks(n) {
        s.push_str(&vector_line(f, row));
        s.push('\n');
    }
    s
}

fn parse_matrix<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
) -> Result<(FieldRef, usize, Vec<Fe>, u32)> {
    let header = lines.next().ok_or_else(|| anyhow!("missing header"))?;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|x| {
            x.parse::<u32>()
                .with_context(|| format!("bad header {header:?}"))
        })
        .collect::<Result<_>>()?;
    let [p, e, n, frob] = nums[..] else {
        bail!("header must be `p e n frob`, got {header:?}")
    };
    let f = Field::new(p, e).map_err(|err| anyhow!("{err}"))?;
    let n = n as usize;
    let mut mat = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| anyhow!("missing matrix row {i}"))?;
        mat.extend(parse_vector(&f, n, line)?);
    }
    Ok((f, n, mat, frob))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

/// Serializes `v -> sigma^frob(v) A` in the matrix exchange format.
pub fn write_element(f: &Field, g: &Semilinear) -> String {
    matrix_body(f, g.dim(), g.matrix(), g.frob())
}

pub fn read_element(text: &str) -> Result<(FieldRef, Semilinear)> {
    let mut lines = content_lines(text);
    let (f, n, mat, frob) = parse_matrix(&mut lines)?;
    ensure!(lines.next().is_none(), "trailing content after matrix");
    let g = Semilinear::new(&f, n, mat, frob).map_err(|e| anyhow!("{e}"))?;
    Ok((f, g))
}

pub fn write_space(space: &QuadraticSpace) -> String {
    format!(
        "{GRAM_TAG}\n{}",
        matrix_body(space.field(), space.dim(), space.upper(), 0)
    )
}

pub fn read_space(text: &str) -> Result<QuadraticSpace> {
    let mut lines = content_lines(text);
    ensure!(lines.next() == Some(GRAM_TAG), "missing {GRAM_TAG} tag");
    let (f, n, mat, frob) = parse_matrix(&mut lines)?;
    ensure!(frob == 0, "a Gram matrix has Frobenius exponent 0");
    for i in 0..n {
        for j in 0..i {
            ensure!(
                mat[i * n + j].is_zero(),
                "entry ({i},{j}) below the diagonal"
            );
        }
    }
    QuadraticSpace::from_gram(f, n, &mat).map_err(|e| anyhow!("{e}"))
}

/// A header `p e n count`, then the vectors sorted lexicographically by residues.
pub fn write_vectors(f: &Field, n: usize, vs: &[Vec<Fe>]) -> String {
    let mut keyed: Vec<(Vec<Vec<u8>>, &Vec<Fe>)> = vs
        .iter()
        .map(|v| (v.iter().map(|&a| f.coeffs(a)).collect(), v))
        .collect();
    keyed.sort();
    let mut s = format!("{} {} {} {}\n", f.p(), f.degree(), n, vs.len());
    for (_, v) in keyed {
        s.push_str(&vector_line(f, v));
        s.push('\n');
    }
    s
}

pub fn read_vectors(text: &str) -> Result<(FieldRef, Vec<Vec<Fe>>)> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| anyhow!("missing header"))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|x| x.parse().context("bad header"))
        .collect::<Result<_>>()?;
    let [p, e, n, count] = nums[..] else {
        bail!("header must be `p e n count`")
    };
    let f = Field::new(p as u32, e as u32).map_err(|err| anyhow!("{err}"))?;
    let vs: Vec<Vec<Fe>> = lines
        .map(|l| parse_vector(&f, n as usize, l))
        .collect::<Result<_>>()?;
    ensure!(
        vs.len() as u64 == count,
        "header announces {count} vectors, found {}",
        vs.len()
    );
    Ok((f, vs))
}

/// Base points, level orbit sizes and the order, one item per line.
pub fn write_chain_summary(f: &Field, s: &ChainSummary) -> String {
    let mut out = format!("order {}\nlevels {}\n", s.order, s.base.len());
    for (i, (b, size)) in s.base.iter().zip(&s.orbit_sizes).enumerate() {
        let _ = writeln!(out, "level {i} orbit {size} base {}", vector_line(f, b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let f = Field::new(3, 2).unwrap();
        let g = Semilinear::new(&f, 2, vec![Fe(1), Fe(5), Fe(0), Fe(7)], 1).unwrap();
        let text = write_element(&f, &g);
        assert!(text.starts_with("3 2 2 1\n"));
        let (f2, g2) = read_element(&text).unwrap();
        assert_eq!(*f2, *f);
        assert_eq!(g2, g);
        assert_eq!(write_element(&f2, &g2), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_element("2 1 2 0\n1 0\n").is_err());
        assert!(read_element("2 1 2 0\n1 0\n0 2\n").is_err());
        assert!(read_element("2 1 2\n1 0\n0 1\n").is_err());
        assert!(read_space("2 1 2 0\n0 1\n0 0\n").is_err());
    }
}
