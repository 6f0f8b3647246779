//! The `.mag` text format.
//!
//! ```text
//! %mag 1
//! %aspect vertex 3
//! %aspect time 2 T1 T2
//! %edges 2
//! 1 T1 2 T1     # source elements, then target elements
//! 2 T1 2 T2
//! ```
//!
//! `%aspect name size [labels...]` declares one aspect; without labels the
//! elements are `1..=size`. Edge tokens are labels or 1-based indices.
//! `%reciprocal` adds the reverse of every edge line; `%duplicates merge`
//! accepts repeated edges instead of rejecting them. `#` starts a comment.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use mag_core::{Aspect, DuplicatePolicy, MagGraph};

use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

struct Header {
    aspects: Vec<Aspect>,
    edges: Option<(usize, usize)>,
    tau: Option<mag_core::CompanionTuple>,
    reciprocal: bool,
    duplicates: DuplicatePolicy,
}

/// Parses a MAG from a text stream. Memory stays proportional to the edge count.
pub fn parse_mag<R: BufRead>(reader: R) -> Result<MagGraph> {
    let mut header = Header {
        aspects: Vec::new(),
        edges: None,
        tau: None,
        reciprocal: false,
        duplicates: DuplicatePolicy::Reject,
    };
    let mut version_seen = false;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut first_line: HashMap<(usize, usize), usize> = HashMap::new();
    let mut body_lines = 0usize;
    let mut elements = Vec::new();
    let mut last_line = 0;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let head = tokens.next().expect("non-empty");

        if let Some(directive) = head.strip_prefix('%') {
            if !version_seen && directive != "mag" {
                return Err(Error::parse(lineno, "the file must start with %mag"));
            }
            if body_lines > 0 {
                return Err(Error::parse(lineno, "directive after the first edge line"));
            }
            let args: Vec<&str> = tokens.collect();
            match directive {
                "mag" => {
                    if version_seen {
                        return Err(Error::parse(lineno, "repeated %mag"));
                    }
                    match args.as_slice() {
                        [v] if v.parse::<u32>().ok() == Some(FORMAT_VERSION) => version_seen = true,
                        _ => {
                            return Err(Error::parse(
                                lineno,
                                format!("unsupported format version (expected %mag {FORMAT_VERSION})"),
                            ))
                        }
                    }
                }
                "aspect" => {
                    if header.edges.is_some() {
                        return Err(Error::parse(lineno, "%aspect after %edges"));
                    }
                    header.aspects.push(parse_aspect(lineno, &args)?);
                }
                "edges" => {
                    if header.edges.is_some() {
                        return Err(Error::parse(lineno, "repeated %edges"));
                    }
                    if header.aspects.is_empty() {
                        return Err(Error::parse(lineno, "%edges before any %aspect"));
                    }
                    let m = match args.as_slice() {
                        [m] => m
                            .parse::<usize>()
                            .map_err(|_| Error::parse(lineno, format!("bad edge count {m:?}")))?,
                        _ => return Err(Error::parse(lineno, "%edges takes one count")),
                    };
                    header.edges = Some((m, lineno));
                    header.tau = Some(companion(&header.aspects, lineno)?);
                    arcs.reserve(m);
                }
                "reciprocal" => {
                    if !args.is_empty() {
                        return Err(Error::parse(lineno, "%reciprocal takes no arguments"));
                    }
                    header.reciprocal = true;
                }
                "duplicates" => {
                    header.duplicates = match args.as_slice() {
                        ["reject"] => DuplicatePolicy::Reject,
                        ["merge"] => DuplicatePolicy::Merge,
                        _ => return Err(Error::parse(lineno, "%duplicates takes reject or merge")),
                    }
                }
                other => return Err(Error::parse(lineno, format!("unknown directive %{other}"))),
            }
            continue;
        }

        if !version_seen {
            return Err(Error::parse(lineno, "the file must start with %mag"));
        }
        let Some((m, _)) = header.edges else {
            return Err(Error::parse(lineno, "edge line before %edges"));
        };
        body_lines += 1;
        if body_lines > m {
            return Err(Error::parse(
                lineno,
                format!("more edge lines than the {m} declared"),
            ));
        }
        let p = header.aspects.len();
        elements.clear();
        for (k, token) in std::iter::once(head).chain(tokens).enumerate() {
            if k >= 2 * p {
                return Err(Error::parse(lineno, format!("expected {} tokens", 2 * p)));
            }
            elements.push(resolve(lineno, &header.aspects[k % p], token)?);
        }
        if elements.len() != 2 * p {
            return Err(Error::parse(
                lineno,
                format!("expected {} tokens, found {}", 2 * p, elements.len()),
            ));
        }
        let tau = header.tau.as_ref().expect("set with %edges");
        let u = tau.encode_elements(&elements[..p])?;
        let v = tau.encode_elements(&elements[p..])?;
        let key = if header.reciprocal { (u.min(v), u.max(v)) } else { (u, v) };
        if let Some(&earlier) = first_line.get(&key) {
            if header.duplicates == DuplicatePolicy::Reject {
                return Err(Error::parse(
                    lineno,
                    format!("edge repeats line {earlier}"),
                ));
            }
            continue;
        }
        first_line.insert(key, lineno);
        arcs.push((u, v));
        if header.reciprocal && u != v {
            arcs.push((v, u));
        }
    }

    if !version_seen {
        return Err(Error::parse(last_line.max(1), "missing %mag header"));
    }
    let Some((m, declared_at)) = header.edges else {
        return Err(Error::parse(last_line.max(1), "missing %edges"));
    };
    if body_lines != m {
        return Err(Error::parse(
            declared_at,
            format!("header declares {m} edges, body has {body_lines}"),
        ));
    }
    Ok(MagGraph::from_composite_arcs(header.aspects, arcs, DuplicatePolicy::Merge)?)
}

fn companion(aspects: &[Aspect], lineno: usize) -> Result<mag_core::CompanionTuple> {
    mag_core::CompanionTuple::new(aspects.iter().map(Aspect::len).collect())
        .map_err(|e| Error::parse(lineno, e.to_string()))
}

fn parse_aspect(lineno: usize, args: &[&str]) -> Result<Aspect> {
    let (name, size, labels) = match args {
        [name, size, labels @ ..] => (name, size, labels),
        _ => return Err(Error::parse(lineno, "%aspect needs a name and a size")),
    };
    let size: usize = size
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad aspect size {size:?}")))?;
    if size == 0 {
        return Err(Error::parse(lineno, format!("aspect {name} is empty")));
    }
    if labels.is_empty() {
        return Ok(Aspect::indexed(*name, size));
    }
    if labels.len() != size {
        return Err(Error::parse(
            lineno,
            format!("aspect {name} declares {size} elements but lists {} labels", labels.len()),
        ));
    }
    Aspect::new(*name, labels.iter().copied()).map_err(|e| Error::parse(lineno, e.to_string()))
}

/// A token names a label or a 1-based index; both readings must agree.
fn resolve(lineno: usize, aspect: &Aspect, token: &str) -> Result<usize> {
    let by_label = aspect.position(token);
    let by_index = token
        .parse::<usize>()
        .ok()
        .filter(|&i| i >= 1 && i <= aspect.len())
        .map(|i| i - 1);
    match (by_label, by_index) {
        (Some(a), Some(b)) if a != b => Err(Error::parse(
            lineno,
            format!("token {token:?} is ambiguous in aspect {}", aspect.name()),
        )),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::parse(
            lineno,
            format!("token {token:?} is not an element of aspect {}", aspect.name()),
        )),
    }
}

pub fn read_mag(path: &Path) -> Result<MagGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_mag(BufReader::new(file))
}

fn check_word(what: &str, word: &str) -> Result<()> {
    if word.is_empty()
        || word.starts_with('%')
        || word.contains('#')
        || word.chars().any(char::is_whitespace)
    {
        return Err(Error::Data(format!("{what} {word:?} cannot be written in the text format")));
    }
    Ok(())
}

/// Writes `mag` so that [`parse_mag`] gives it back. Every arc gets its own line.
pub fn write_mag<W: Write>(mag: &MagGraph, mut out: W) -> Result<()> {
    writeln!(out, "%mag {FORMAT_VERSION}")?;
    for aspect in mag.aspects() {
        check_word("aspect name", aspect.name())?;
        write!(out, "%aspect {} {}", aspect.name(), aspect.len())?;
        let default = aspect
            .labels()
            .iter()
            .enumerate()
            .all(|(i, l)| *l == (i + 1).to_string());
        if !default {
            for label in aspect.labels() {
                check_word("label", label)?;
                write!(out, " {label}")?;
            }
        }
        writeln!(out)?;
    }
    writeln!(out, "%edges {}", mag.edge_count())?;
    let tau = mag.companion();
    let p = mag.order();
    let mut buf = vec![0usize; p];
    for &(u, v) in mag.edges() {
        let mut first = true;
        for x in [u, v] {
            tau.decode_into(x, &mut buf)?;
            for (k, &e) in buf.iter().enumerate() {
                if !first {
                    out.write_all(b" ")?;
                }
                first = false;
                out.write_all(mag.aspects()[k].label(e).expect("in range").as_bytes())?;
            }
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_mag_file(mag: &MagGraph, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_mag(mag, BufWriter::new(file))
}

/// Renders composite vertex `index` of `aspects` as `(l1|l2|...)`.
pub fn vertex_name(aspects: &[Aspect], tau: &mag_core::CompanionTuple, index: usize) -> Result<String> {
    let v = tau.decode(index)?;
    let parts: Vec<&str> = v
        .elements()
        .iter()
        .zip(aspects)
        .map(|(&e, a)| a.label(e).expect("in range"))
        .collect();
    Ok(format!("({})", parts.join("|")))
}
