//! Graph serialization: graph6, the plain edge-list format, and DOT export.

use super::{Graph, GraphError, MAX_VERTICES};

/// Decodes a graph6-encoded graph (short form for n <= 62, '~'-prefixed long
/// forms above that). Leading `>>graph6<<` headers and trailing whitespace
/// are tolerated.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, GraphError> {
    let mut data = text;
    let mut base = 0;
    if data.starts_with(b">>graph6<<") {
        data = &data[10..];
        base = 10;
    }
    while let [rest @ .., last] = data {
        if last.is_ascii_whitespace() {
            data = rest;
        } else {
            break;
        }
    }
    if data.is_empty() {
        return Err(GraphError::Graph6 {
            offset: base,
            message: "empty input".into(),
        });
    }

    let err = |offset: usize, message: &str| GraphError::Graph6 {
        offset: base + offset,
        message: message.into(),
    };
    let sextet = |b: u8, offset: usize| -> Result<u64, GraphError> {
        if (63..=126).contains(&b) {
            Ok(u64::from(b - 63))
        } else {
            Err(err(offset, "byte outside graph6 range 63..=126"))
        }
    };

    // Vertex count header.
    let (n, mut pos) = if data[0] == b'~' {
        if data.len() >= 2 && data[1] == b'~' {
            let mut n: u64 = 0;
            for i in 2..8 {
                let b = *data.get(i).ok_or_else(|| err(i, "truncated 36-bit vertex count"))?;
                n = n << 6 | sextet(b, i)?;
            }
            (n, 8)
        } else {
            let mut n: u64 = 0;
            for i in 1..4 {
                let b = *data.get(i).ok_or_else(|| err(i, "truncated 18-bit vertex count"))?;
                n = n << 6 | sextet(b, i)?;
            }
            (n, 4)
        }
    } else {
        (sextet(data[0], 0)?, 1)
    };
    if n > MAX_VERTICES as u64 {
        return Err(err(0, &format!("{n} vertices exceeds cap {MAX_VERTICES}")));
    }
    let n = n as usize;

    // Upper-triangle bit vector, column by column.
    let nbits = n * (n.max(1) - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if data.len() != pos + nbytes {
        let message = if data.len() < pos + nbytes {
            "truncated adjacency bit vector"
        } else {
            "trailing bytes after adjacency bit vector"
        };
        return Err(err(data.len().min(pos + nbytes), message));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = sextet(data[pos + bit_index / 6], pos + bit_index / 6)?;
            if byte >> (5 - bit_index % 6) & 1 == 1 {
                edges.push((u, v));
            }
            bit_index += 1;
            if bit_index == nbits {
                break 'outer;
            }
        }
    }
    // Padding bits must be zero.
    if nbits % 6 != 0 {
        let byte = sextet(data[pos + nbits / 6], pos + nbits / 6)?;
        let pad = 6 - nbits % 6;
        if byte & ((1 << pad) - 1) != 0 {
            return Err(err(pos + nbits / 6, "nonzero padding bits"));
        }
    }
    pos += nbytes;
    let _ = pos;
    Graph::from_edges(n, edges)
}

/// Encodes `g` in graph6. Inverse of [`parse_graph6`].
pub fn write_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // n <= 4096 always fits the 18-bit form.
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc: u8 = 0;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.adjacent(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

/// Parses the edge-list format: first non-comment line is the vertex count,
/// each following line is `u v`. Blank lines and `#` comments are ignored;
/// duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| GraphError::EdgeList {
            line: line_no,
            message,
        };
        let mut tokens = line.split_whitespace();
        match n {
            None => {
                let tok = tokens.next().expect("non-empty line has a token");
                let count: usize = tok
                    .parse()
                    .map_err(|_| err(format!("expected vertex count, found {tok:?}")))?;
                if tokens.next().is_some() {
                    return Err(err("expected a single vertex count on the first line".into()));
                }
                if count > MAX_VERTICES {
                    return Err(err(format!("{count} vertices exceeds cap {MAX_VERTICES}")));
                }
                n = Some(count);
            }
            Some(count) => {
                let mut endpoint = |name: &str| -> Result<usize, GraphError> {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| err(format!("missing {name} endpoint")))?;
                    let v: usize = tok
                        .parse()
                        .map_err(|_| err(format!("non-integer token {tok:?}")))?;
                    if v >= count {
                        return Err(err(format!("endpoint {v} >= n = {count}")));
                    }
                    Ok(v)
                };
                let u = endpoint("first")?;
                let v = endpoint("second")?;
                if tokens.next().is_some() {
                    return Err(err("expected exactly two endpoints".into()));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    match n {
        Some(count) => Graph::from_edges(count, edges),
        None => Err(GraphError::EdgeList {
            line: 1,
            message: "missing vertex count".into(),
        }),
    }
}

/// Writes the edge-list format accepted by [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// DOT export for visualization: integer vertices, undirected edges.
pub fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
