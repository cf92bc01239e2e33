//! Field and polynomial literals.
//!
//! Fields: `q=7`, `q=3^2`, `q=3^2;mod=2,1,1` (modulus coefficients
//! ascending; the monic leading 1 may be left implicit). A bare `7` or
//! `3^2` is accepted too.
//!
//! Polynomials: `x^5+x^3+x`, `5*x^4+2`, and for extension fields bracketed
//! coordinate vectors like `[1,2]*x^3+[0,1]` (coordinates ascending by
//! basis degree). Integer coefficients name elements of the prime subfield.

use anyhow::{anyhow, bail, Context, Result};
use ffindex_core::{FieldElement, FieldSpec, SparsePoly};

/// Split `q` into `(p, m)` with `p` prime, or fail.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        bail!("field size must be at least 2");
    }
    let mut p = q;
    for d in 2..=q {
        if d * d > q {
            break;
        }
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let mut m = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        bail!("{q} is not a prime power");
    }
    Ok((p, m))
}

/// Parse a field literal into a constructed field.
pub fn parse_field(input: &str) -> Result<FieldSpec> {
    let input: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut q_part = None;
    let mut mod_part = None;
    for piece in input.split(';') {
        if let Some(rest) = piece.strip_prefix("q=") {
            q_part = Some(rest.to_string());
        } else if let Some(rest) = piece.strip_prefix("mod=") {
            mod_part = Some(rest.to_string());
        } else if q_part.is_none() && !piece.is_empty() {
            q_part = Some(piece.to_string());
        } else {
            bail!("unrecognized field literal piece: {piece:?}");
        }
    }
    let q_part = q_part.ok_or_else(|| anyhow!("field literal needs a size, e.g. q=7"))?;

    let (p, m) = if let Some((base, exp)) = q_part.split_once('^') {
        let p: u64 = base.parse().context("bad prime in field literal")?;
        let m: u32 = exp.parse().context("bad exponent in field literal")?;
        (p, m)
    } else {
        let q: u64 = q_part.parse().context("bad field size")?;
        prime_power(q)?
    };

    let modulus: Option<Vec<u64>> = match mod_part {
        None => None,
        Some(s) => {
            let mut coeffs: Vec<u64> = s
                .split(',')
                .map(|c| c.parse::<u64>().context("bad modulus coefficient"))
                .collect::<Result<_>>()?;
            if coeffs.len() == m as usize {
                coeffs.push(1); // implicit monic leading term
            }
            Some(coeffs)
        }
    };

    FieldSpec::new(p, m, modulus.as_deref())
        .map_err(|e| anyhow!("cannot build F_{p}^{m}: {e}"))
}

/// Parse a polynomial in the CLI syntax over the given field.
pub fn parse_poly(spec: &FieldSpec, input: &str) -> Result<SparsePoly> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty polynomial");
    }
    let mut terms: Vec<(u64, FieldElement)> = Vec::new();
    let mut i = 0usize;
    let mut sign_negative = false;
    // leading sign
    if s[i] == '-' {
        sign_negative = true;
        i += 1;
    } else if s[i] == '+' {
        i += 1;
    }
    loop {
        let (exp, coeff, next) = parse_term(spec, &s, i)?;
        let coeff = if sign_negative { spec.neg(coeff) } else { coeff };
        terms.push((exp, coeff));
        i = next;
        if i == s.len() {
            break;
        }
        match s[i] {
            '+' => sign_negative = false,
            '-' => sign_negative = true,
            other => bail!("expected + or - at position {i}, found {other:?}"),
        }
        i += 1;
        if i == s.len() {
            bail!("dangling sign at the end of the polynomial");
        }
    }
    Ok(SparsePoly::from_terms(spec, terms))
}

/// One term starting at `i`: returns `(exponent, coefficient, next index)`.
fn parse_term(spec: &FieldSpec, s: &[char], mut i: usize) -> Result<(u64, FieldElement, usize)> {
    let mut coeff: Option<FieldElement> = None;

    if i < s.len() && s[i] == '[' {
        let close = s[i..]
            .iter()
            .position(|&c| c == ']')
            .map(|off| i + off)
            .ok_or_else(|| anyhow!("unclosed [ in coefficient"))?;
        let inner: String = s[i + 1..close].iter().collect();
        let coords: Vec<u64> = inner
            .split(',')
            .map(|c| c.parse::<u64>().context("bad coordinate"))
            .collect::<Result<_>>()?;
        coeff = Some(
            spec.from_coords(&coords)
                .ok_or_else(|| anyhow!("coordinate vector longer than the field degree"))?,
        );
        i = close + 1;
    } else if i < s.len() && s[i].is_ascii_digit() {
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let n: u64 = s[start..i].iter().collect::<String>().parse()?;
        coeff = Some(spec.from_int(n as i64));
    }

    // optional '*' between coefficient and x
    if coeff.is_some() && i < s.len() && s[i] == '*' {
        i += 1;
        if i >= s.len() || s[i] != 'x' {
            bail!("expected x after *");
        }
    }

    if i < s.len() && s[i] == 'x' {
        i += 1;
        let exp = if i < s.len() && s[i] == '^' {
            i += 1;
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                bail!("expected an exponent after ^");
            }
            s[start..i].iter().collect::<String>().parse::<u64>()?
        } else {
            1
        };
        Ok((exp, coeff.unwrap_or_else(|| spec.one()), i))
    } else {
        match coeff {
            Some(c) => Ok((0, c, i)),
            None => bail!("expected a term at position {i}"),
        }
    }
}

/// Comma-separated integers, e.g. a `--J 1,3` check set or a field list.
pub fn parse_u64_list(input: &str) -> Result<Vec<u64>> {
    if input.trim().is_empty() {
        return Ok(Vec::new());
    }
    input
        .split(',')
        .map(|x| x.trim().parse::<u64>().context("bad integer in list"))
        .collect()
}
