//! Instance file parsing and emission.
//!
//! The format is DIMACS-flavored text. A header `p vecdom <n> <m>` comes
//! first, followed in any order by `e <u> <v>` edge records (1-based in
//! files), `d <v> <value>` demand records (vertices without one default to
//! demand 1, so plain dominating-set instances work unchanged), and `c`
//! comment lines. Parsing either succeeds completely or reports the first
//! offending line.

use crate::graph::{Graph, GraphError, Vertex};
use crate::instance::DemandVector;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("no `p vecdom <n> <m>` header before the first record")]
    MissingHeader,
    #[error("line {0}: second header, only one `p` line is allowed")]
    DuplicateHeader(usize),
    #[error("line {0}: malformed header, expected `p vecdom <n> <m>`")]
    BadHeader(usize),
    #[error("line {0}: malformed edge, expected `e <u> <v>` with 1-based vertices")]
    BadEdge(usize),
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: u32 },
    #[error("line {0}: self-loop")]
    SelfLoop(usize),
    #[error("line {0}: duplicate edge")]
    DuplicateEdge(usize),
    #[error("line {0}: malformed demand, expected `d <v> <value>`")]
    BadDemand(usize),
    #[error("line {0}: vertex already has a demand record")]
    DuplicateDemand(usize),
    #[error("line {0}: unknown record type")]
    UnknownRecord(usize),
    #[error("header promised {expected} edges, file has {got}")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

/// The kind-independent content of an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub graph: Graph,
    pub demands: DemandVector,
}

/// Parses instance text. Total: returns the instance or the first error,
/// with its 1-based line number.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut demands: Vec<Option<u32>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else {
            continue;
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader(line));
                }
                let ok = fields.next() == Some("vecdom");
                let n = fields.next().and_then(|t| t.parse::<u32>().ok());
                let m = fields.next().and_then(|t| t.parse::<usize>().ok());
                match (ok && fields.next().is_none(), n, m) {
                    (true, Some(n), Some(m)) => {
                        header = Some((n, m));
                        demands = vec![None; n as usize];
                    }
                    _ => return Err(ParseError::BadHeader(line)),
                }
            }
            "e" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let u = field_vertex(&mut fields, line, n)?;
                let v = field_vertex(&mut fields, line, n)?;
                if fields.next().is_some() {
                    return Err(ParseError::BadEdge(line));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
            "d" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let v = field_vertex_demand(&mut fields, line, n)?;
                let value = fields
                    .next()
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or(ParseError::BadDemand(line))?;
                if fields.next().is_some() {
                    return Err(ParseError::BadDemand(line));
                }
                let slot = &mut demands[v as usize];
                if slot.is_some() {
                    return Err(ParseError::DuplicateDemand(line));
                }
                *slot = Some(value);
            }
            _ => return Err(ParseError::UnknownRecord(line)),
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            got: edges.len(),
        });
    }
    let graph = Graph::new(n, &edges).map_err(|e| blame_edge_line(e, &edges, &edge_lines))?;
    let demands = DemandVector::new(demands.into_iter().map(|d| d.unwrap_or(1)).collect());
    Ok(ParsedInstance { graph, demands })
}

/// Maps a graph construction error back onto the input line that caused it.
fn blame_edge_line(
    err: GraphError,
    edges: &[(Vertex, Vertex)],
    lines: &[usize],
) -> ParseError {
    let line_of = |pred: &dyn Fn(&(Vertex, Vertex)) -> bool| {
        edges
            .iter()
            .position(|e| pred(e))
            .map(|i| lines[i])
            .unwrap_or(0)
    };
    match err {
        GraphError::SelfLoop(v) => ParseError::SelfLoop(line_of(&|&(a, b)| a == b && a == v)),
        GraphError::DuplicateEdge(u, v) => {
            // Blame the second occurrence.
            let mut seen = false;
            for (i, &(a, b)) in edges.iter().enumerate() {
                if (a.min(b), a.max(b)) == (u, v) {
                    if seen {
                        return ParseError::DuplicateEdge(lines[i]);
                    }
                    seen = true;
                }
            }
            ParseError::DuplicateEdge(0)
        }
        other => ParseError::Graph(other),
    }
}

/// Reads one 1-based vertex field for an edge record.
fn field_vertex<'a>(
    fields: &mut impl Iterator<Item = &'a str>,
    line: usize,
    n: u32,
) -> Result<Vertex, ParseError> {
    let raw = fields
        .next()
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or(ParseError::BadEdge(line))?;
    if raw < 1 || raw > n as u64 {
        return Err(ParseError::VertexOutOfRange {
            line,
            vertex: raw,
            n,
        });
    }
    Ok((raw - 1) as Vertex)
}

/// Same for a demand record, whose malformed-field error differs.
fn field_vertex_demand<'a>(
    fields: &mut impl Iterator<Item = &'a str>,
    line: usize,
    n: u32,
) -> Result<Vertex, ParseError> {
    let raw = fields
        .next()
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or(ParseError::BadDemand(line))?;
    if raw < 1 || raw > n as u64 {
        return Err(ParseError::VertexOutOfRange {
            line,
            vertex: raw,
            n,
        });
    }
    Ok((raw - 1) as Vertex)
}

/// Renders an instance in the file format; `parse_instance` inverts it.
/// Demand records are written only where they differ from the default.
pub fn emit_instance(graph: &Graph, demands: &DemandVector) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p vecdom {} {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    for v in graph.vertices() {
        let d = demands.get(v);
        if d != 1 {
            let _ = writeln!(out, "d {} {}", v + 1, d);
        }
    }
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_graph;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_a_path_with_default_demands() {
        let text = "c a three-vertex path\np vecdom 3 2\ne 1 2\ne 2 3\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.graph.vertex_count(), 3);
        assert_eq!(parsed.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(parsed.demands, DemandVector::uniform(3, 1));
    }

    #[test]
    fn demand_records_override_the_default() {
        let text = "p vecdom 3 2\ne 1 2\ne 2 3\nd 2 5\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.demands.get(1), 5);
        assert_eq!(parsed.demands.get(0), 1);
        assert_eq!(parsed.demands.get(2), 1);
    }

    #[test]
    fn records_before_the_header_are_rejected() {
        assert_eq!(
            parse_instance("e 1 2\np vecdom 2 1\n"),
            Err(ParseError::MissingHeader)
        );
        assert_eq!(parse_instance(""), Err(ParseError::MissingHeader));
    }

    #[test]
    fn line_numbers_point_at_the_offense() {
        let text = "c ok\np vecdom 3 3\ne 1 2\ne 1 1\ne 2 3\n";
        assert_eq!(parse_instance(text), Err(ParseError::SelfLoop(4)));

        let text = "p vecdom 3 3\ne 1 2\ne 2 3\ne 2 1\n";
        assert_eq!(parse_instance(text), Err(ParseError::DuplicateEdge(4)));

        let text = "p vecdom 3 2\ne 1 2\ne 2 4\n";
        assert_eq!(
            parse_instance(text),
            Err(ParseError::VertexOutOfRange {
                line: 3,
                vertex: 4,
                n: 3
            })
        );

        let text = "p vecdom 3 2\ne 1 2\ne 2 3\nd 2 -1\n";
        assert_eq!(parse_instance(text), Err(ParseError::BadDemand(4)));

        let text = "p vecdom 3 2\ne 1 2\ne 2 3\nd 2 1\nd 2 2\n";
        assert_eq!(parse_instance(text), Err(ParseError::DuplicateDemand(5)));

        let text = "p vecdom 3 2\ne 1 2\nx what\ne 2 3\n";
        assert_eq!(parse_instance(text), Err(ParseError::UnknownRecord(3)));
    }

    #[test]
    fn edge_count_must_match_the_header() {
        let text = "p vecdom 3 2\ne 1 2\n";
        assert_eq!(
            parse_instance(text),
            Err(ParseError::EdgeCountMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn malformed_headers_and_records_are_rejected() {
        assert_eq!(
            parse_instance("p vecdom 3\n"),
            Err(ParseError::BadHeader(1))
        );
        assert_eq!(
            parse_instance("p dimacs 3 2\n"),
            Err(ParseError::BadHeader(1))
        );
        assert_eq!(
            parse_instance("p vecdom 2 1\np vecdom 2 1\ne 1 2\n"),
            Err(ParseError::DuplicateHeader(2))
        );
        assert_eq!(
            parse_instance("p vecdom 3 2\ne 1 2 9\ne 2 3\n"),
            Err(ParseError::BadEdge(2))
        );
    }

    #[test]
    fn round_trips_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x10);
        for _ in 0..80 {
            let n = rng.gen_range(1u32..12);
            let max_m = n as usize * (n as usize - 1) / 2;
            let g = random_graph(n, rng.gen_range(0..=max_m), &mut rng);
            let d =
                DemandVector::new((0..n).map(|_| rng.gen_range(0..=4)).collect::<Vec<u32>>());
            let text = emit_instance(&g, &d);
            let parsed = parse_instance(&text).unwrap();
            assert_eq!(parsed.graph, g);
            assert_eq!(parsed.demands, d);
        }
    }
}
