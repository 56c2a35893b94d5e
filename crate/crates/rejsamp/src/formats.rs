//! Plain-text file formats: edge lists, partitions, transcripts, query
//! batches, truth-table hex dumps, and instance descriptors.

use anyhow::{bail, Context, Result};

use rejsamp_core::boolfn::{Bits, TruthTable};
use rejsamp_core::graph::{Graph, Partition};
use rejsamp_core::junta::JuntaInstance;
use rejsamp_core::oracle::{Response, Transcript, TranscriptEntry};
use rejsamp_core::rng::chain;
use rejsamp_core::unate::UnateInstance;

/// Edge list: first line `n m`, then `m` lines `u v` with `u < v`.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n_vertices(), g.n_edges());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines();
    let header = lines.next().context("empty edge list file")?;
    let mut parts = header.split_whitespace();
    let n: u32 = parts.next().context("missing n")?.parse()?;
    let m: usize = parts.next().context("missing m")?.parse()?;
    let mut edges = Vec::with_capacity(m);
    for line in lines.take(m) {
        let mut p = line.split_whitespace();
        let u: u32 = p.next().context("missing u")?.parse()?;
        let v: u32 = p.next().context("missing v")?.parse()?;
        edges.push((u, v));
    }
    if edges.len() != m {
        bail!("edge list declares {m} edges but contains {}", edges.len());
    }
    Ok(Graph::new(n, edges)?)
}

/// Partition file: `n k` then the `k` vertex ids of side `A`.
pub fn write_partition(p: &Partition) -> String {
    let mut out = format!("{} {}\n", p.n_vertices(), p.side_a().len());
    for &v in p.side_a() {
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn read_partition(text: &str) -> Result<Partition> {
    let mut numbers = text.split_whitespace().map(str::parse::<u32>);
    let n = numbers.next().context("empty partition file")??;
    let k = numbers.next().context("missing side size")??;
    let a: Vec<u32> = numbers.take(k as usize).collect::<Result<_, _>>()?;
    if a.len() != k as usize {
        bail!("partition declares {k} vertices but contains {}", a.len());
    }
    Ok(Partition::new(n, a)?)
}

/// A short stable fingerprint of a graph for transcript headers.
pub fn graph_hash(g: &Graph) -> u64 {
    let mut h = chain(0x6772_6170_685f_6873, &[g.n_vertices() as u64]);
    for &(u, v) in g.edges() {
        h = chain(h, &[((u as u64) << 32) | v as u64]);
    }
    h
}

/// Transcript dump: `#` header with seed and graph hash, then one line per
/// entry: `Q <size> <sorted vertices> | R EMPTY|LONE v|EDGE u v`.
pub fn write_transcript(t: &Transcript, seed: u64, graph_hash: u64) -> String {
    let mut out = format!("# seed={seed} graph_hash={graph_hash:016x}\n");
    for e in &t.entries {
        let verts: Vec<String> = e.query.iter().map(u32::to_string).collect();
        let q = format!("Q {} {}", e.query.len(), verts.join(" "));
        let r = match e.response {
            Response::Empty => "R EMPTY".to_string(),
            Response::Lone(v) => format!("R LONE {v}"),
            Response::Edge(u, v) => format!("R EDGE {u} {v}"),
        };
        out.push_str(&format!("{} | {}\n", q.trim_end(), r));
    }
    out
}

/// Parse a transcript dump. The returned transcript carries the entries
/// only; recompute cost with [`transcript_cost`].
pub fn read_transcript(text: &str) -> Result<Transcript> {
    let mut transcript = Transcript::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (q_part, r_part) = line
            .split_once('|')
            .with_context(|| format!("line {}: missing '|'", lineno + 1))?;
        let mut q_tokens = q_part.split_whitespace();
        if q_tokens.next() != Some("Q") {
            bail!("line {}: expected 'Q'", lineno + 1);
        }
        let size: usize = q_tokens.next().context("missing query size")?.parse()?;
        let query: Vec<u32> =
            q_tokens.map(str::parse).collect::<Result<_, _>>().context("bad vertex id")?;
        if query.len() != size {
            bail!("line {}: declared size {size}, found {}", lineno + 1, query.len());
        }
        let mut r_tokens = r_part.split_whitespace();
        if r_tokens.next() != Some("R") {
            bail!("line {}: expected 'R'", lineno + 1);
        }
        let response = match r_tokens.next().context("missing response kind")? {
            "EMPTY" => Response::Empty,
            "LONE" => Response::Lone(r_tokens.next().context("missing vertex")?.parse()?),
            "EDGE" => Response::Edge(
                r_tokens.next().context("missing u")?.parse()?,
                r_tokens.next().context("missing v")?.parse()?,
            ),
            other => bail!("line {}: unknown response '{other}'", lineno + 1),
        };
        transcript.entries.push(TranscriptEntry { query, response });
    }
    Ok(transcript)
}

/// Sum of query sizes of a parsed transcript.
pub fn transcript_cost(t: &Transcript) -> u64 {
    t.entries.iter().map(|e| e.query.len() as u64).sum()
}

/// Query batch file: one bitstring per line, leftmost character = first
/// variable.
pub fn write_batch(queries: &[Bits]) -> String {
    let mut out = String::new();
    for z in queries {
        for j in 1..=z.len() {
            out.push(if z.get(j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn read_batch(text: &str) -> Result<Vec<Bits>> {
    let mut queries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut z = Bits::zeros(line.len());
        for (pos, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => z.set(pos + 1, true),
                other => bail!("line {}: invalid bit character '{other}'", lineno + 1),
            }
        }
        queries.push(z);
    }
    if queries.is_empty() {
        bail!("batch file contains no queries");
    }
    Ok(queries)
}

/// Truth-table hex file: one line of lowercase hex, 2^n bits.
pub fn write_table(f: &TruthTable) -> String {
    format!("{}\n", f.to_hex())
}

pub fn read_table(text: &str) -> Result<TruthTable> {
    let hex = text.trim();
    let bits = hex.len() * 4;
    if bits == 0 || !bits.is_power_of_two() {
        bail!("hex dump of {} digits is not a power-of-two bit count", hex.len());
    }
    let n = bits.trailing_zeros() as usize;
    Ok(TruthTable::from_hex(n, hex)?)
}

fn id_list(ids: &[u32]) -> String {
    ids.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

/// Instance descriptor for a hard junta-side function.
pub fn write_junta_descriptor(inst: &JuntaInstance) -> String {
    format!(
        "n={}\nm={}\na={}\nfamily={}\nseed={}\n",
        inst.n(),
        id_list(inst.m_set()),
        id_list(inst.a_set()),
        inst.family().as_str(),
        inst.seed(),
    )
}

/// Instance descriptor for a hard unate-side function, including the
/// materialized term list (one term per line).
pub fn write_unate_descriptor(inst: &UnateInstance) -> Result<String> {
    let mut out = format!(
        "n={}\nm={}\nm1={}\nm2={}\na={}\nfamily={}\nseed={}\nterm_size={}\nterms:\n",
        inst.n(),
        id_list(inst.m_set()),
        inst.m1(),
        inst.m2(),
        id_list(inst.a_set()),
        inst.family().as_str(),
        inst.seed(),
        inst.term_size(),
    );
    for term in inst.terms()? {
        out.push_str(&id_list(&term));
        out.push('\n');
    }
    Ok(out)
}
