//! Binary table files.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "CPWL"
//!      4     4  version (u32) = 1
//!      8     4  flags (u32): bit0 nonuniform, bit1 clamp, bit2 32-bit payload
//!     12     4  count (u32) = N + 1
//!     16     8  a (f64)
//!     24     8  b (f64)
//!     32        values[count], then knots[count] if bit0
//! ```
//!
//! Everything is little-endian with no padding. Payload entries are f64
//! unless bit2 is set, in which case they are f32 (a lossy export that must
//! be requested explicitly with [`write_table_f32`]).

use std::io::{ErrorKind, Read, Write};

use crate::lut::{LutKind, LutTable, OobPolicy};
use crate::{Error, Result};

pub const MAGIC: [u8; 4] = *b"CPWL";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 32;

pub const FLAG_NONUNIFORM: u32 = 1;
pub const FLAG_CLAMP: u32 = 1 << 1;
pub const FLAG_F32: u32 = 1 << 2;
const KNOWN_FLAGS: u32 = FLAG_NONUNIFORM | FLAG_CLAMP | FLAG_F32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableHeader {
    pub version: u32,
    pub flags: u32,
    pub count: u32,
    pub a: f64,
    pub b: f64,
}

impl TableHeader {
    pub fn is_nonuniform(&self) -> bool {
        self.flags & FLAG_NONUNIFORM != 0
    }

    pub fn is_f32(&self) -> bool {
        self.flags & FLAG_F32 != 0
    }

    pub fn policy(&self) -> OobPolicy {
        if self.flags & FLAG_CLAMP != 0 {
            OobPolicy::Clamp
        } else {
            OobPolicy::Strict
        }
    }

    /// Bytes following the header.
    pub fn payload_len(&self) -> u64 {
        let width = if self.is_f32() { 4 } else { 8 };
        let arrays = if self.is_nonuniform() { 2 } else { 1 };
        width * arrays * u64::from(self.count)
    }

    fn encode(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4..8].copy_from_slice(&self.version.to_le_bytes());
        out[8..12].copy_from_slice(&self.flags.to_le_bytes());
        out[12..16].copy_from_slice(&self.count.to_le_bytes());
        out[16..24].copy_from_slice(&self.a.to_le_bytes());
        out[24..32].copy_from_slice(&self.b.to_le_bytes());
        out
    }

    fn decode(raw: &[u8; HEADER_LEN]) -> Result<Self> {
        let magic: [u8; 4] = raw[0..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        let u32_at = |o: usize| u32::from_le_bytes(raw[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(raw[o..o + 8].try_into().unwrap());
        let version = u32_at(4);
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let header = Self {
            version,
            flags: u32_at(8),
            count: u32_at(12),
            a: f64_at(16),
            b: f64_at(24),
        };
        if header.flags & !KNOWN_FLAGS != 0 {
            return Err(corrupt(format!(
                "unknown flag bits {:#x}",
                header.flags & !KNOWN_FLAGS
            )));
        }
        if header.count < 2 {
            return Err(corrupt(format!("count {} is below 2", header.count)));
        }
        if !(header.a < header.b && header.a.is_finite() && header.b.is_finite()) {
            return Err(corrupt(format!(
                "bad interval [{}, {}]",
                header.a, header.b
            )));
        }
        Ok(header)
    }
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptTable(msg.into())
}

fn header_for(t: &LutTable, extra_flags: u32) -> Result<TableHeader> {
    let count = u32::try_from(t.values().len()).map_err(|_| {
        Error::InvalidArgument(format!(
            "{} values exceed the u32 count field",
            t.values().len()
        ))
    })?;
    let mut flags = extra_flags;
    if t.kind() == LutKind::Nonuniform {
        flags |= FLAG_NONUNIFORM;
    }
    if t.policy() == OobPolicy::Clamp {
        flags |= FLAG_CLAMP;
    }
    Ok(TableHeader {
        version: VERSION,
        flags,
        count,
        a: t.a(),
        b: t.b(),
    })
}

/// Writes `t` with 64-bit payload; returns the number of bytes written.
pub fn write_table<W: Write>(t: &LutTable, mut sink: W) -> Result<usize> {
    let header = header_for(t, 0)?;
    let mut buf = Vec::with_capacity(HEADER_LEN + header.payload_len() as usize);
    buf.extend_from_slice(&header.encode());
    for v in t.values().iter().chain(t.knots().unwrap_or(&[])) {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    sink.write_all(&buf)?;
    sink.flush()?;
    Ok(buf.len())
}

/// Writes `t` rounded to 32-bit floats, setting bit2.
///
/// `a` and `b` stay in 64-bit header fields but are rounded too, so they
/// match the first and last stored knot. Fails if rounding overflows or
/// merges adjacent knots.
pub fn write_table_f32<W: Write>(t: &LutTable, mut sink: W) -> Result<usize> {
    let narrow = |x: f64| -> Result<f32> {
        let y = x as f32;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::InvalidArgument(format!(
                "{x} does not fit in a 32-bit float"
            )))
        }
    };
    let mut header = header_for(t, FLAG_F32)?;
    header.a = f64::from(narrow(t.a())?);
    header.b = f64::from(narrow(t.b())?);
    if header.a >= header.b {
        return Err(Error::InvalidArgument(
            "interval collapses in 32-bit precision".into(),
        ));
    }
    let values = t
        .values()
        .iter()
        .map(|&v| narrow(v))
        .collect::<Result<Vec<f32>>>()?;
    let knots = t
        .knots()
        .unwrap_or(&[])
        .iter()
        .map(|&v| narrow(v))
        .collect::<Result<Vec<f32>>>()?;
    if knots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "knots collapse in 32-bit precision".into(),
        ));
    }
    let mut buf = Vec::with_capacity(HEADER_LEN + header.payload_len() as usize);
    buf.extend_from_slice(&header.encode());
    for v in values.iter().chain(&knots) {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    sink.write_all(&buf)?;
    sink.flush()?;
    Ok(buf.len())
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == ErrorKind::UnexpectedEof {
        corrupt("file is truncated")
    } else {
        Error::Io(e)
    }
}

/// Reads and validates the 32-byte header only.
pub fn read_header<R: Read>(mut source: R) -> Result<TableHeader> {
    let mut raw = [0u8; HEADER_LEN];
    source.read_exact(&mut raw).map_err(truncated)?;
    TableHeader::decode(&raw)
}

/// Reads a table written by [`write_table`] or [`write_table_f32`].
///
/// The source must end exactly at the end of the payload.
pub fn read_table<R: Read>(mut source: R) -> Result<LutTable> {
    let header = read_header(&mut source)?;
    let want = header.payload_len();
    let mut payload = Vec::new();
    (&mut source).take(want).read_to_end(&mut payload)?;
    if (payload.len() as u64) < want {
        return Err(corrupt(format!(
            "payload has {} bytes, header declares {want}",
            payload.len()
        )));
    }
    let mut probe = [0u8; 1];
    if source.read(&mut probe)? != 0 {
        return Err(corrupt("trailing bytes after payload"));
    }

    let decoded: Vec<f64> = if header.is_f32() {
        payload
            .chunks_exact(4)
            .map(|c| f64::from(f32::from_le_bytes(c.try_into().unwrap())))
            .collect()
    } else {
        payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect()
    };
    if let Some(i) = decoded.iter().position(|v| !v.is_finite()) {
        return Err(corrupt(format!("non-finite entry at payload index {i}")));
    }
    let count = header.count as usize;
    let values = decoded[..count].to_vec();
    let policy = header.policy();
    if !header.is_nonuniform() {
        return LutTable::uniform(header.a, header.b, values, policy)
            .map_err(|e| corrupt(format!("invalid uniform table: {e}")));
    }
    let knots = decoded[count..].to_vec();
    if knots[0] != header.a || knots[count - 1] != header.b {
        return Err(corrupt("first/last knot disagree with the header interval"));
    }
    if let Some(i) = knots.windows(2).position(|w| w[0] >= w[1]) {
        return Err(corrupt(format!(
            "knots {i} and {} are not increasing",
            i + 1
        )));
    }
    LutTable::nonuniform(knots, values, policy).map_err(|e| corrupt(format!("invalid knots: {e}")))
}
