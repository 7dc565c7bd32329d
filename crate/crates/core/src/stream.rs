//! `GSC1` bitstream container.
//!
//! Layout: the magic bytes `GSC1`, the number of payload bits as a
//! little-endian `u64`, then the bits packed most-significant-bit first with
//! the final byte zero-padded.

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"GSC1";
const HEADER_LEN: usize = 12;

pub fn write_stream(bits: &[bool]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + bits.len().div_ceil(8));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(bits.len() as u64).to_le_bytes());
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
        out.push(byte);
    }
    out
}

pub fn read_stream(bytes: &[u8]) -> Result<Vec<bool>> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Framing(format!(
            "{} bytes is shorter than the 12-byte header",
            bytes.len()
        )));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::Framing("missing GSC1 magic".into()));
    }
    let count = u64::from_le_bytes(bytes[4..HEADER_LEN].try_into().expect("8 bytes"));
    let payload = &bytes[HEADER_LEN..];
    let needed = count.div_ceil(8);
    if payload.len() as u64 != needed {
        return Err(Error::Framing(format!(
            "header announces {count} bits ({needed} bytes) but payload has {} bytes",
            payload.len()
        )));
    }
    let count = count as usize;
    let bits: Vec<bool> = payload
        .iter()
        .flat_map(|byte| (0..8).map(move |i| byte & (0x80 >> i) != 0))
        .collect();
    if bits[count..].iter().any(|&b| b) {
        return Err(Error::Framing("non-zero padding bits".into()));
    }
    Ok(bits[..count].to_vec())
}
