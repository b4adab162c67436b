//! graph6 encoding.
//!
//! Size header is `63 + n` for `n <= 62`, otherwise `126` followed by three
//! 6-bit groups. The body lists the upper triangle column by column,
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, six bits per byte, each byte
//! offset by 63, zero-padded at the end. Vertex order is kept as is.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn check_byte(offset: usize, byte: u8) -> Result<u8> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Error::Graph6InvalidByte { offset, byte })
    }
}

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6Empty);
    }
    let first = check_byte(0, bytes[0])?;
    let (n, header) = if first < 63 {
        (first as usize, 1)
    } else {
        // 126: either three more size groups, or (126, 126) and six more
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Error::Graph6Truncated {
                    expected: 8,
                    found: bytes.len(),
                });
            }
            let mut n = 0usize;
            for (i, &b) in bytes[2..8].iter().enumerate() {
                n = (n << 6) | check_byte(2 + i, b)? as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Error::Graph6Truncated {
                    expected: 4,
                    found: bytes.len(),
                });
            }
            let mut n = 0usize;
            for (i, &b) in bytes[1..4].iter().enumerate() {
                n = (n << 6) | check_byte(1 + i, b)? as usize;
            }
            (n, 4)
        }
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::VertexCount {
            n,
            max: MAX_VERTICES,
        });
    }

    let expected = header + body_len(n);
    if bytes.len() != expected {
        return Err(Error::Graph6Truncated {
            expected,
            found: bytes.len(),
        });
    }

    let mut g = Graph::empty(n)?;
    let total_bits = n * (n - 1) / 2;
    let body = &bytes[header..];
    let mut values = Vec::with_capacity(body.len());
    for (i, &b) in body.iter().enumerate() {
        values.push(check_byte(header + i, b)?);
    }
    let bit = |i: usize| (values[i / 6] >> (5 - i % 6)) & 1 == 1;

    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(idx) {
                g.add_edge(u, v);
            }
            idx += 1;
        }
    }
    for i in total_bits..values.len() * 6 {
        if bit(i) {
            return Err(Error::Graph6Padding);
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + body_len(n.max(1)));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
