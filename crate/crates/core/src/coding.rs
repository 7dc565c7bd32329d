//! Prefix codes read off the generic space.
//!
//! With `D = 2^k` the generic outcomes get the `k`-bit fixed-length code.
//! Outcomes merged into the same observed symbol differ only in their trailing
//! bits, so each symbol is coded by the prefix its block shares, of length
//! `log2(D / N_i) = -log2 p_i`. That requires every block to be aligned, which
//! holds when all `N_i` are powers of two and blocks are laid out largest first.
//! Any other generic space gets Shannon lengths `ceil(log2(D / N_i))` instead.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::dist::{ExactDistribution, GenericSpace, Rational};
use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};

/// A bit string, most significant (first transmitted) bit first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword(Vec<bool>);

impl Codeword {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// The low `len` bits of `value`, most significant first.
    fn from_value(value: &BigUint, len: usize) -> Self {
        Self(
            (0..len)
                .rev()
                .map(|i| value.bit(i as u64))
                .collect(),
        )
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedInput {
                    line: 1,
                    reason: format!("`{s}` is not a bit string"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Codeword)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeMode {
    /// Dyadic generic space: block prefixes, Kraft sum exactly one.
    Exact,
    /// Shannon lengths `ceil(log2(D / N_i))`, canonically assigned.
    ShannonFallback,
    /// Built from explicit codewords or lengths (Huffman, code tables).
    Custom,
}

impl fmt::Display for CodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeMode::Exact => "exact",
            CodeMode::ShannonFallback => "fallback",
            CodeMode::Custom => "custom",
        })
    }
}

/// Prefix-free code with one codeword per observed symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCode {
    codewords: Vec<Codeword>,
    mode: CodeMode,
}

/// Average length of a code under a distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeStats {
    /// `Σ p_i len_i` in bits per symbol.
    pub average_length: Rational,
    /// `average_length - H_2(P)`.
    pub entropy_gap: f64,
}

impl PrefixCode {
    /// Wraps explicit codewords, rejecting sets that are not prefix-free.
    pub fn from_codewords(codewords: Vec<Codeword>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::Empty);
        }
        check_prefix_free(&codewords)?;
        Ok(Self {
            codewords,
            mode: CodeMode::Custom,
        })
    }

    /// Canonical code for the given lengths: shortest first, ties by symbol
    /// index, consecutive binary values within a length.
    pub fn canonical(lengths: &[usize]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::Empty);
        }
        let mut order: Vec<usize> = (0..lengths.len()).collect();
        order.sort_by_key(|&i| (lengths[i], i));

        let mut codewords = vec![Codeword::default(); lengths.len()];
        let mut next = BigUint::zero();
        let mut prev_len = 0usize;
        for (rank, &i) in order.iter().enumerate() {
            let len = lengths[i];
            if rank > 0 {
                next += 1u32;
            }
            next <<= len - prev_len;
            if next.bits() > len as u64 {
                return Err(Error::KraftViolation);
            }
            codewords[i] = Codeword::from_value(&next, len);
            prev_len = len;
        }
        Ok(Self {
            codewords,
            mode: CodeMode::Custom,
        })
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn mode(&self) -> CodeMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.codewords.iter().map(Codeword::len).collect()
    }

    /// `Σ 2^-len_i`, exactly.
    pub fn kraft_sum(&self) -> Rational {
        self.codewords
            .iter()
            .map(|c| {
                Rational::new(BigInt::one(), BigInt::one() << c.len())
            })
            .sum()
    }

    pub fn encode(&self, symbols: &[usize]) -> Result<Vec<bool>> {
        let mut out = Vec::new();
        for &s in symbols {
            let word = self.codewords.get(s).ok_or(Error::SymbolOutOfRange {
                symbol: s,
                alphabet: self.len(),
            })?;
            out.extend_from_slice(word.bits());
        }
        Ok(out)
    }

    /// Inverse of [`encode`](Self::encode). A code containing the empty
    /// codeword (one symbol, `D = 1`) carries no information and decodes
    /// empty input to an empty sequence.
    pub fn decode(&self, bits: &[bool]) -> Result<Vec<usize>> {
        Decoder::new(self).decode(bits)
    }

    pub fn average_length(&self, dist: &ExactDistribution) -> Result<CodeStats> {
        if dist.len() != self.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: dist.len(),
            });
        }
        let average_length: Rational = dist
            .probs()
            .iter()
            .zip(&self.codewords)
            .map(|(p, c)| p * Rational::from_integer(BigInt::from(c.len())))
            .sum();
        let h = shannon_entropy(dist, 2)?;
        let avg = average_length.to_f64().unwrap_or(f64::NAN);
        Ok(CodeStats {
            average_length,
            entropy_gap: avg - h,
        })
    }

    /// Code table text: one `index<TAB>bitstring` line per symbol.
    pub fn to_table(&self) -> String {
        self.codewords
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{i}\t{c}\n"))
            .collect()
    }

    /// Reads a code table. Every index in `0..N` must appear exactly once.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut entries: Vec<Option<Codeword>> = Vec::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let bad = |reason: String| Error::MalformedInput {
                line: line_no,
                reason,
            };
            let (index, bits) = raw
                .split_once('\t')
                .ok_or_else(|| bad("expected `index<TAB>bitstring`".into()))?;
            let index: usize = index
                .trim()
                .parse()
                .map_err(|_| bad(format!("malformed symbol index `{index}`")))?;
            let bits = bits.trim_end_matches(['\r', '\n']);
            let word: Codeword = bits
                .parse()
                .map_err(|_| bad(format!("`{bits}` is not a bit string")))?;
            if entries.len() <= index {
                entries.resize(index + 1, None);
            }
            if entries[index].replace(word).is_some() {
                return Err(bad(format!("duplicate symbol index {index}")));
            }
        }
        let codewords = entries
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| Error::MalformedInput {
                    line: 0,
                    reason: format!("symbol index {i} missing from table"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_codewords(codewords)
    }
}

/// Rejects any pair where one codeword is a prefix of (or equal to) another.
fn check_prefix_free(codewords: &[Codeword]) -> Result<()> {
    let mut sorted: Vec<&Codeword> = codewords.iter().collect();
    sorted.sort();
    // a prefix sorts immediately before the block of its extensions
    for pair in sorted.windows(2) {
        if pair[0].is_prefix_of(pair[1]) {
            return Err(Error::NotPrefixFree {
                first: pair[0].to_string(),
                second: pair[1].to_string(),
            });
        }
    }
    Ok(())
}

struct Decoder {
    /// `children[node] = [on 0, on 1]`
    children: Vec<[Option<usize>; 2]>,
    symbol: Vec<Option<usize>>,
}

impl Decoder {
    fn new(code: &PrefixCode) -> Self {
        let mut d = Decoder {
            children: vec![[None, None]],
            symbol: vec![None],
        };
        for (s, word) in code.codewords.iter().enumerate() {
            let mut node = 0;
            for &bit in word.bits() {
                node = match d.children[node][bit as usize] {
                    Some(next) => next,
                    None => {
                        d.children.push([None, None]);
                        d.symbol.push(None);
                        let next = d.children.len() - 1;
                        d.children[node][bit as usize] = Some(next);
                        next
                    }
                };
            }
            d.symbol[node] = Some(s);
        }
        d
    }

    fn decode(&self, bits: &[bool]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if self.symbol[0].is_some() {
            // only the empty codeword exists
            return if bits.is_empty() {
                Ok(out)
            } else {
                Err(Error::UnmatchedPrefix { position: 0 })
            };
        }
        let mut node = 0;
        let mut start = 0;
        for (pos, &bit) in bits.iter().enumerate() {
            node = self.children[node][bit as usize]
                .ok_or(Error::UnmatchedPrefix { position: start })?;
            if let Some(s) = self.symbol[node] {
                out.push(s);
                node = 0;
                start = pos + 1;
            }
        }
        if node != 0 {
            return Err(Error::IncompleteCodeword { position: start });
        }
        Ok(out)
    }
}

fn is_power_of_two(n: &BigUint) -> bool {
    !n.is_zero() && n.count_ones() == 1
}

/// Exact code when `D` and every `N_i` are powers of two, Shannon fallback otherwise.
pub fn build_generic_code(gs: &GenericSpace) -> PrefixCode {
    let dyadic = is_power_of_two(gs.dimension()) && gs.counts().iter().all(is_power_of_two);
    if dyadic {
        block_prefix_code(gs)
    } else {
        shannon_fallback_code(gs)
    }
}

/// Lays symbols out over the `k`-bit generic codewords in descending `N_i`
/// (stable on index) and keeps the prefix shared by each block.
fn block_prefix_code(gs: &GenericSpace) -> PrefixCode {
    let k = gs.dimension().bits() as usize - 1;
    let mut order: Vec<usize> = (0..gs.len()).collect();
    order.sort_by(|&a, &b| gs.counts()[b].cmp(&gs.counts()[a]));

    let mut codewords = vec![Codeword::default(); gs.len()];
    let mut offset = BigUint::zero();
    for i in order {
        let block = &gs.counts()[i];
        let free_bits = block.bits() as usize - 1;
        debug_assert!((&offset % block).is_zero(), "block straddles a prefix boundary");
        codewords[i] = Codeword::from_value(&(&offset >> free_bits), k - free_bits);
        offset += block;
    }
    PrefixCode {
        codewords,
        mode: CodeMode::Exact,
    }
}

/// Smallest `L` with `N_i * 2^L >= D`, i.e. `ceil(log2(D / N_i))`.
fn shannon_length(d: &BigUint, n: &BigUint) -> usize {
    let mut len = (d.bits() - n.bits()) as usize;
    // n * 2^len is now within a factor 2 of d on either side
    while (n << len) < *d {
        len += 1;
    }
    while len > 0 && (n << (len - 1)) >= *d {
        len -= 1;
    }
    len
}

fn shannon_fallback_code(gs: &GenericSpace) -> PrefixCode {
    let lengths: Vec<usize> = gs
        .counts()
        .iter()
        .map(|n| shannon_length(gs.dimension(), n))
        .collect();
    let code = PrefixCode::canonical(&lengths).expect("Shannon lengths satisfy Kraft");
    PrefixCode {
        mode: CodeMode::ShannonFallback,
        ..code
    }
}

/// Huffman code with exact rational weights, canonically assigned.
///
/// Ties are broken by merging the subtrees whose smallest original symbol
/// index is lowest.
pub fn huffman_oracle(dist: &ExactDistribution) -> PrefixCode {
    let n = dist.len();
    if n == 1 {
        return PrefixCode::canonical(&[0]).expect("single empty codeword");
    }
    // (weight, lowest symbol index, node id)
    let mut heap = BinaryHeap::new();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, p) in dist.probs().iter().enumerate() {
        heap.push(Reverse((p.clone(), i, i)));
    }
    while heap.len() > 1 {
        let Reverse((wa, ia, a)) = heap.pop().expect("two nodes left");
        let Reverse((wb, ib, b)) = heap.pop().expect("two nodes left");
        let node = parent.len();
        parent.push(None);
        parent[a] = Some(node);
        parent[b] = Some(node);
        heap.push(Reverse((wa + wb, ia.min(ib), node)));
    }
    let lengths: Vec<usize> = (0..n)
        .map(|mut leaf| {
            let mut depth = 0;
            while let Some(p) = parent[leaf] {
                depth += 1;
                leaf = p;
            }
            depth
        })
        .collect();
    PrefixCode::canonical(&lengths).expect("Huffman lengths satisfy Kraft")
}

/// Whitespace-separated symbol indices.
pub fn parse_symbols(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        for token in crate::dist::strip_comment(line).split_whitespace() {
            out.push(token.parse().map_err(|_| Error::MalformedToken {
                line: line_no + 1,
                token: token.to_string(),
                reason: "expected a symbol index",
            })?);
        }
    }
    Ok(out)
}
