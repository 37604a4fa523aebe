//! JSONL improvement logs and resumable checkpoints.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Bit `i` is bit `i % 8` of byte `i / 8`; bytes in lowercase hex.
pub fn state_to_hex(bits: &[bool]) -> String {
    bits.chunks(8)
        .map(|c| {
            let b = c.iter().enumerate().fold(0u8, |acc, (i, &x)| acc | (x as u8) << i);
            format!("{b:02x}")
        })
        .collect()
}

pub fn state_from_hex(hex: &str, n: usize) -> Result<Vec<bool>> {
    if hex.len() != n.div_ceil(8) * 2 {
        return Err(Error::invalid(format!("state hex has {} digits, expected {}", hex.len(), n.div_ceil(8) * 2)));
    }
    let mut bits = Vec::with_capacity(n);
    for k in 0..hex.len() / 2 {
        let byte = u8::from_str_radix(&hex[2 * k..2 * k + 2], 16)
            .map_err(|_| Error::invalid(format!("bad hex byte at offset {}", 2 * k)))?;
        for i in 0..8 {
            if bits.len() < n {
                bits.push(byte >> i & 1 == 1);
            } else if byte >> i & 1 == 1 {
                return Err(Error::invalid("state hex has bits set beyond N"));
            }
        }
    }
    Ok(bits)
}

#[derive(Serialize)]
struct LogLine<'a> {
    restart: usize,
    iteration: usize,
    cost: &'a str,
    state: &'a str,
    wall_ms: u128,
}

/// One JSON object per line for every improvement.
pub struct RunLog {
    out: BufWriter<File>,
    start: Instant,
}

impl RunLog {
    pub fn create(path: &Path) -> Result<Self> {
        Ok(Self {
            out: BufWriter::new(File::create(path)?),
            start: Instant::now(),
        })
    }

    pub fn record(&mut self, restart: usize, iteration: usize, cost: &Rational, state: &[bool]) -> Result<()> {
        let line = LogLine {
            restart,
            iteration,
            cost: &format_rational(cost),
            state: &state_to_hex(state),
            wall_ms: self.start.elapsed().as_millis(),
        };
        serde_json::to_writer(&mut self.out, &line)?;
        self.out.write_all(b"\n")?;
        self.out.flush()?;
        Ok(())
    }
}

/// Best state of a run, enough to resume from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub num_bits: usize,
    pub state: String,
    pub cost: String,
    pub seed: u64,
    pub iterations_done: usize,
}

impl Checkpoint {
    pub fn new(state: &[bool], cost: &Rational, seed: u64, iterations_done: usize) -> Self {
        Self {
            num_bits: state.len(),
            state: state_to_hex(state),
            cost: format_rational(cost),
            seed,
            iterations_done,
        }
    }

    pub fn bits(&self) -> Result<Vec<bool>> {
        state_from_hex(&self.state, self.num_bits)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        // Write then rename so a crash never leaves a torn checkpoint.
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
