//! Bloom filters for compact, probabilistic file-location knowledge.
//!
//! A filter is an `m`-bit vector with `k` hash functions. Membership queries
//! may return false positives but never false negatives, and the filter for
//! a union of sets is the bit-wise OR of the individual filters, which is
//! what makes them suitable for merging location knowledge received from
//! peers.
//!
//! The expected false-positive probability after inserting `n` items is
//! `(1 - e^{-kn/m})^k`; [`false_positive_rate`], [`optimal_k`], and
//! [`size_for`] expose that model for capacity planning.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the number of hash functions.
///
/// The marginal benefit of one more hash function falls off quickly and no
/// practical sizing needs more than this.
pub const MAX_HASHES: u32 = 64;

/// Hash seeds used when the caller does not supply any.
pub const DEFAULT_HASH_SEEDS: [u64; 2] = [0x517c_c1b7_2722_0a95, 0x9e37_79b9_7f4a_7c15];

const MAGIC: [u8; 8] = *b"filocblm";
const FORMAT_VERSION: u64 = 1;
/// magic + version + m + k + two seeds + inserted count, all 64-bit LE.
const HEADER_LEN: usize = 56;

#[derive(Debug, Error)]
pub enum BloomError {
    #[error("invalid bloom parameters: {0}")]
    InvalidParams(String),
    #[error("incompatible filters: {0}")]
    Incompatible(String),
    #[error("bad filter encoding: {0}")]
    Format(String),
}

/// Sizing parameters of a filter: bit count `m`, hash count `k`, and the
/// anticipated element count the filter was sized for.
///
/// `expected_items` is advisory only: it does not affect filter behaviour
/// and is excluded from equality and compatibility checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BloomParams {
    /// Number of bits in the filter (`m`).
    pub bits: u64,
    /// Number of hash functions (`k`).
    pub hashes: u32,
    /// Anticipated element count (`n`), advisory.
    #[serde(default)]
    pub expected_items: u64,
    /// Seeds of the two keyed hashes that derive the `k` probe positions.
    #[serde(default = "default_seeds")]
    pub hash_seeds: [u64; 2],
}

fn default_seeds() -> [u64; 2] {
    DEFAULT_HASH_SEEDS
}

impl PartialEq for BloomParams {
    fn eq(&self, other: &Self) -> bool {
        // expected_items is advisory and deliberately ignored.
        self.bits == other.bits
            && self.hashes == other.hashes
            && self.hash_seeds == other.hash_seeds
    }
}

impl Eq for BloomParams {}

impl BloomParams {
    pub fn new(bits: u64, hashes: u32) -> Result<Self, BloomError> {
        let params = BloomParams {
            bits,
            hashes,
            expected_items: 0,
            hash_seeds: DEFAULT_HASH_SEEDS,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_expected_items(mut self, n: u64) -> Self {
        self.expected_items = n;
        self
    }

    pub fn with_seeds(mut self, seeds: [u64; 2]) -> Self {
        self.hash_seeds = seeds;
        self
    }

    pub fn validate(&self) -> Result<(), BloomError> {
        if self.bits == 0 {
            return Err(BloomError::InvalidParams("bit count m must be >= 1".into()));
        }
        if self.hashes == 0 {
            return Err(BloomError::InvalidParams(
                "hash count k must be >= 1".into(),
            ));
        }
        if self.hashes > MAX_HASHES {
            return Err(BloomError::InvalidParams(format!(
                "hash count k must be <= {MAX_HASHES}, got {}",
                self.hashes
            )));
        }
        Ok(())
    }

    /// Bytes needed for the bit vector.
    pub fn payload_len(&self) -> usize {
        (self.bits as usize).div_ceil(8)
    }
}

/// An `m`-bit Bloom filter.
///
/// Value-semantic: cloning gives an independent filter, and a filter is only
/// mutated through explicit [`insert`](BloomFilter::insert) /
/// [`union_in_place`](BloomFilter::union_in_place) calls. Identical items and
/// params produce identical bit vectors on every platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomFilter {
    params: BloomParams,
    /// Bit `i` lives at byte `i / 8`, bit position `i % 8` (LSB-first).
    bits: Vec<u8>,
    inserted: u64,
}

impl BloomFilter {
    /// Creates an all-zero filter.
    pub fn new(params: BloomParams) -> Result<Self, BloomError> {
        params.validate()?;
        Ok(BloomFilter {
            bits: vec![0u8; params.payload_len()],
            params,
            inserted: 0,
        })
    }

    pub fn params(&self) -> &BloomParams {
        &self.params
    }

    /// Number of `insert` calls so far. Counts calls, not distinct items, so
    /// it is an upper bound on `n` when estimating the false-positive rate.
    pub fn inserted_count(&self) -> u64 {
        self.inserted
    }

    /// The raw bit vector, LSB-first within each byte.
    pub fn bit_vector(&self) -> &[u8] {
        &self.bits
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> u64 {
        self.bits.iter().map(|b| u64::from(b.count_ones())).sum()
    }

    /// Expected false-positive probability at the current insert count.
    pub fn estimated_fp_rate(&self) -> f64 {
        false_positive_rate(self.inserted, self.params.bits, self.params.hashes)
    }

    fn probe_base(&self, item: &[u8]) -> (u64, u64) {
        (
            hash64(self.params.hash_seeds[0], item),
            hash64(self.params.hash_seeds[1], item),
        )
    }

    /// Sets the `k` probe positions for `item`.
    pub fn insert(&mut self, item: &[u8]) {
        let (ha, hb) = self.probe_base(item);
        for i in 0..u64::from(self.params.hashes) {
            let idx = ha.wrapping_add(i.wrapping_mul(hb)) % self.params.bits;
            self.bits[(idx / 8) as usize] |= 1 << (idx % 8);
        }
        self.inserted += 1;
    }

    /// True iff all `k` probe positions for `item` are set.
    ///
    /// Never false for an item that was inserted.
    pub fn contains(&self, item: &[u8]) -> bool {
        let (ha, hb) = self.probe_base(item);
        (0..u64::from(self.params.hashes)).all(|i| {
            let idx = ha.wrapping_add(i.wrapping_mul(hb)) % self.params.bits;
            self.bits[(idx / 8) as usize] & (1 << (idx % 8)) != 0
        })
    }

    /// ORs `other` into `self`. Requires identical `m`, `k`, and hash seeds.
    pub fn union_in_place(&mut self, other: &BloomFilter) -> Result<(), BloomError> {
        if self.params != other.params {
            return Err(BloomError::Incompatible(format!(
                "params differ: (m={}, k={}, seeds={:x?}) vs (m={}, k={}, seeds={:x?})",
                self.params.bits,
                self.params.hashes,
                self.params.hash_seeds,
                other.params.bits,
                other.params.hashes,
                other.params.hash_seeds,
            )));
        }
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        self.inserted += other.inserted;
        Ok(())
    }

    /// Bit-wise OR of two filters; bit-identical to a filter built by
    /// inserting the union of both item sets.
    pub fn union(&self, other: &BloomFilter) -> Result<BloomFilter, BloomError> {
        let mut out = self.clone();
        out.union_in_place(other)?;
        Ok(out)
    }

    /// Length of [`to_bytes`](BloomFilter::to_bytes) output.
    pub fn serialized_len(&self) -> usize {
        HEADER_LEN + self.params.payload_len()
    }

    /// Serializes to the transport format: a fixed header (magic, version,
    /// m, k, hash seeds, inserted count; all integers little-endian, 64-bit)
    /// followed by `ceil(m/8)` payload bytes, LSB-first bit packing.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.serialized_len());
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.params.bits.to_le_bytes());
        out.extend_from_slice(&u64::from(self.params.hashes).to_le_bytes());
        out.extend_from_slice(&self.params.hash_seeds[0].to_le_bytes());
        out.extend_from_slice(&self.params.hash_seeds[1].to_le_bytes());
        out.extend_from_slice(&self.inserted.to_le_bytes());
        out.extend_from_slice(&self.bits);
        out
    }

    /// Inverse of [`to_bytes`](BloomFilter::to_bytes).
    ///
    /// `expected_items` is not part of the wire format; it is restored as
    /// the inserted count.
    pub fn from_bytes(buf: &[u8]) -> Result<BloomFilter, BloomError> {
        if buf.len() < HEADER_LEN {
            return Err(BloomError::Format(format!(
                "truncated header: {} bytes, need {HEADER_LEN}",
                buf.len()
            )));
        }
        if buf[0..8] != MAGIC {
            return Err(BloomError::Format("bad magic".into()));
        }
        let field = |i: usize| {
            let mut raw = [0u8; 8];
            raw.copy_from_slice(&buf[i * 8..(i + 1) * 8]);
            u64::from_le_bytes(raw)
        };
        let version = field(1);
        if version != FORMAT_VERSION {
            return Err(BloomError::Format(format!(
                "unsupported version {version}, expected {FORMAT_VERSION}"
            )));
        }
        let bits = field(2);
        let hashes = field(3);
        if hashes > u64::from(u32::MAX) {
            return Err(BloomError::Format(format!("hash count {hashes} out of range")));
        }
        let inserted = field(6);
        let params = BloomParams {
            bits,
            hashes: hashes as u32,
            expected_items: inserted,
            hash_seeds: [field(4), field(5)],
        };
        params
            .validate()
            .map_err(|e| BloomError::Format(e.to_string()))?;
        let payload = &buf[HEADER_LEN..];
        if payload.len() != params.payload_len() {
            return Err(BloomError::Format(format!(
                "payload is {} bytes, header says {}",
                payload.len(),
                params.payload_len()
            )));
        }
        let last_bits = bits % 8;
        if last_bits != 0 && payload[payload.len() - 1] >> last_bits != 0 {
            return Err(BloomError::Format(
                "stray bits beyond m in final payload byte".into(),
            ));
        }
        Ok(BloomFilter {
            params,
            bits: payload.to_vec(),
            inserted,
        })
    }
}

/// Seeded 64-bit hash: FNV-1a over the bytes, then a splitmix64 finalizer so
/// that nearby inputs and seeds land far apart.
fn hash64(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Expected false-positive probability `(1 - e^{-kn/m})^k` for a filter of
/// `m` bits and `k` hashes holding `n` items.
///
/// Non-decreasing in `n`, non-increasing in `m`; 0 for an empty filter.
pub fn false_positive_rate(n: u64, m: u64, k: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let exponent = -(k as f64 * n as f64) / m as f64;
    (1.0 - exponent.exp()).powi(k as i32).clamp(0.0, 1.0)
}

/// The integer `k` in `1..=64` minimizing [`false_positive_rate`] for the
/// given `m` and `n`, found by exhaustive scan; ties break toward smaller
/// `k`. Near the continuous optimum `(m/n) ln 2`.
pub fn optimal_k(m: u64, n: u64) -> u32 {
    let mut best = 1;
    let mut best_rate = false_positive_rate(n, m, 1);
    for k in 2..=MAX_HASHES {
        let rate = false_positive_rate(n, m, k);
        if rate < best_rate {
            best_rate = rate;
            best = k;
        }
    }
    best
}

/// Smallest `m` (rounded up to a whole byte) such that with `k =
/// optimal_k(m, n)` the expected false-positive rate is at most `target_fp`.
pub fn size_for(n: u64, target_fp: f64) -> Result<BloomParams, BloomError> {
    if n == 0 {
        return Err(BloomError::InvalidParams("element count n must be >= 1".into()));
    }
    if !(target_fp > 0.0 && target_fp < 1.0) {
        return Err(BloomError::InvalidParams(format!(
            "target false-positive rate must be in (0, 1), got {target_fp}"
        )));
    }
    let fits = |bytes: u64| {
        let m = bytes * 8;
        false_positive_rate(n, m, optimal_k(m, n)) <= target_fp
    };
    // The optimal-k rate is non-increasing in m, so bracket then bisect.
    // Start near the continuous-optimum size m = -n ln(p) / (ln 2)^2.
    let guess = (-(n as f64) * target_fp.ln() / (std::f64::consts::LN_2.powi(2)) / 8.0).ceil();
    let mut hi = (guess as u64).max(1);
    while !fits(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| BloomError::InvalidParams("required filter size overflows".into()))?;
    }
    let mut lo = 1u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let bits = hi * 8;
    Ok(BloomParams {
        bits,
        hashes: optimal_k(bits, n),
        expected_items: n,
        hash_seeds: DEFAULT_HASH_SEEDS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn filter(m: u64, k: u32) -> BloomFilter {
        BloomFilter::new(BloomParams::new(m, k).unwrap()).unwrap()
    }

    #[test]
    fn new_filter_is_all_zero() {
        let f = filter(8, 2);
        assert_eq!(f.bit_vector(), &[0u8]);
        assert_eq!(f.inserted_count(), 0);
        assert_eq!(f.count_ones(), 0);
    }

    #[test]
    fn zero_bits_or_hashes_rejected() {
        assert!(matches!(
            BloomParams::new(0, 2),
            Err(BloomError::InvalidParams(_))
        ));
        assert!(matches!(
            BloomParams::new(8, 0),
            Err(BloomError::InvalidParams(_))
        ));
        assert!(matches!(
            BloomParams::new(8, MAX_HASHES + 1),
            Err(BloomError::InvalidParams(_))
        ));
    }

    #[test]
    fn twenty_megabyte_filter() {
        let f = filter(160_000_000, 11);
        assert_eq!(f.bit_vector().len(), 20_000_000);
    }

    #[test]
    fn insert_then_contains() {
        let mut f = filter(256, 4);
        f.insert(b"alpha");
        assert!(f.contains(b"alpha"));
        assert!(!filter(256, 4).contains(b"alpha"));
    }

    #[test]
    fn double_insert_is_idempotent_on_bits() {
        let mut once = filter(256, 4);
        once.insert(b"x");
        let mut twice = filter(256, 4);
        twice.insert(b"x");
        twice.insert(b"x");
        assert_eq!(once.bit_vector(), twice.bit_vector());
        assert_eq!(twice.inserted_count(), 2);
    }

    #[test]
    fn popcount_bounded_by_k_times_inserts() {
        let mut f = filter(16_000, 11);
        for i in 0..1000u32 {
            f.insert(format!("item-{i}").as_bytes());
        }
        assert!(f.count_ones() <= 11_000);
        assert!(f.count_ones() <= 11 * f.inserted_count());
    }

    #[test]
    fn paper_operating_point_under_0_1_percent() {
        // 16 bits per entry with k = 11: measured rate over 1e5 fresh probes.
        let mut f = filter(16_000, 11);
        for i in 0..1000u32 {
            f.insert(format!("member-{i}").as_bytes());
        }
        let probes = 100_000u32;
        let hits = (0..probes)
            .filter(|i| f.contains(format!("probe-{i}").as_bytes()))
            .count();
        let rate = hits as f64 / f64::from(probes);
        assert!(rate < 0.001, "measured fp rate {rate}");
    }

    #[test]
    fn union_identity_and_idempotence() {
        let mut f = filter(512, 3);
        for item in [b"a".as_ref(), b"b", b"c"] {
            f.insert(item);
        }
        let empty = filter(512, 3);
        assert_eq!(empty.union(&f).unwrap().bit_vector(), f.bit_vector());
        assert_eq!(f.union(&f).unwrap().bit_vector(), f.bit_vector());
    }

    #[test]
    fn union_matches_filter_of_combined_set() {
        let mut fx = filter(512, 3);
        fx.insert(b"x");
        let mut fy = filter(512, 3);
        fy.insert(b"y");
        let mut fxy = filter(512, 3);
        fxy.insert(b"x");
        fxy.insert(b"y");
        let u = fx.union(&fy).unwrap();
        assert_eq!(u.bit_vector(), fxy.bit_vector());
        assert_eq!(u.inserted_count(), 2);
    }

    #[test]
    fn union_rejects_mismatched_params() {
        let a = filter(512, 3);
        let b = filter(512, 4);
        assert!(matches!(a.union(&b), Err(BloomError::Incompatible(_))));
        let c = BloomFilter::new(
            BloomParams::new(512, 3).unwrap().with_seeds([1, 2]),
        )
        .unwrap();
        assert!(matches!(a.union(&c), Err(BloomError::Incompatible(_))));
    }

    #[test]
    fn fp_rate_formula_values() {
        assert_eq!(false_positive_rate(0, 16_000, 11), 0.0);
        let p = false_positive_rate(1000, 16_000, 11);
        assert!((p - 4.587107308146284e-4).abs() < 1e-12);
        assert!(p < 0.001);
        let p1 = false_positive_rate(1000, 1000, 1);
        assert!((p1 - 0.6321205588285577).abs() < 1e-12);
    }

    #[test]
    fn fp_rate_monotone_in_n_and_m() {
        for k in [1u32, 4, 11] {
            let mut prev = 0.0;
            for n in (0..=4000).step_by(500) {
                let p = false_positive_rate(n, 16_000, k);
                assert!(p >= prev);
                prev = p;
            }
            let mut prev = 1.0;
            for m in (1000..=32_000).step_by(1000) {
                let p = false_positive_rate(1000, m, k);
                assert!(p <= prev);
                prev = p;
            }
        }
    }

    #[test]
    fn optimal_k_values() {
        assert_eq!(optimal_k(16_000, 1000), 11);
        assert_eq!(optimal_k(1000, 1000), 1);
        assert_eq!(optimal_k(10_000, 1000), 7);
    }

    #[test]
    fn size_for_paper_parameters() {
        let params = size_for(10_000_000, 0.001).unwrap();
        assert!(params.bits <= 160_000_000, "m = {}", params.bits);
        assert!(params.bits % 8 == 0);
        let per_entry = params.bits as f64 / 1e7;
        assert!(per_entry <= 16.0, "{per_entry} bits per entry");
    }

    #[test]
    fn size_for_degenerate_targets() {
        let loose = size_for(1, 0.5).unwrap();
        assert!(loose.bits <= 8, "m = {}", loose.bits);

        let tight = size_for(1, 0.0001).unwrap();
        let achieved = false_positive_rate(1, tight.bits, tight.hashes);
        assert!(achieved <= 0.0001, "achieved {achieved}");
        // Minimality: one byte less misses the target.
        let smaller = tight.bits - 8;
        assert!(
            smaller == 0
                || false_positive_rate(1, smaller, optimal_k(smaller, 1)) > 0.0001
        );

        assert!(size_for(0, 0.01).is_err());
        assert!(size_for(10, 0.0).is_err());
        assert!(size_for(10, 1.0).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let mut f = filter(1000, 5);
        for i in 0..64u32 {
            f.insert(&i.to_le_bytes());
        }
        let bytes = f.to_bytes();
        assert_eq!(bytes.len(), f.serialized_len());
        let back = BloomFilter::from_bytes(&bytes).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn empty_filter_encoding() {
        let f = filter(8, 1);
        let bytes = f.to_bytes();
        assert_eq!(bytes.len(), HEADER_LEN + 1);
        assert_eq!(bytes[HEADER_LEN], 0);
    }

    #[test]
    fn decode_rejects_corruption() {
        let f = filter(64, 2);
        let good = f.to_bytes();

        let mut bad_magic = good.clone();
        bad_magic[0] ^= 0xff;
        assert!(matches!(
            BloomFilter::from_bytes(&bad_magic),
            Err(BloomError::Format(_))
        ));

        let mut bad_version = good.clone();
        bad_version[8] = 9;
        assert!(matches!(
            BloomFilter::from_bytes(&bad_version),
            Err(BloomError::Format(_))
        ));

        assert!(matches!(
            BloomFilter::from_bytes(&good[..HEADER_LEN - 1]),
            Err(BloomError::Format(_))
        ));
        assert!(matches!(
            BloomFilter::from_bytes(&good[..good.len() - 1]),
            Err(BloomError::Format(_))
        ));
    }

    #[test]
    fn deterministic_bits_across_runs() {
        let mut f = filter(64, 3);
        f.insert(b"file-0001");
        f.insert(b"file-0002");
        // Frozen encoding of the 8 payload bytes; guards hash portability.
        assert_eq!(f.bit_vector(), &[8, 0, 0, 130, 128, 0, 32, 16]);
    }

    #[test]
    fn analytic_and_empirical_rates_agree_spot_check() {
        // Single grid point; the acceptance suite sweeps the full grid.
        let (n, m, k) = (1000u32, 8000u64, 6u32);
        let mut f = filter(m, k);
        for i in 0..n {
            f.insert(format!("member-{i}").as_bytes());
        }
        let probes = 100_000u32;
        let hits = (0..probes)
            .filter(|i| f.contains(format!("probe-{i}").as_bytes()))
            .count();
        let measured = hits as f64 / f64::from(probes);
        let analytic = false_positive_rate(u64::from(n), m, k);
        let se = (analytic * (1.0 - analytic) / f64::from(probes)).sqrt();
        let tol = f64::max(0.15 * analytic, 3.0 * se);
        assert!(
            (measured - analytic).abs() <= tol,
            "measured {measured}, analytic {analytic}, tol {tol}"
        );
    }

    #[test]
    fn monte_carlo_matches_formula_at_low_density() {
        // kn/m = 1 and k = 1: the formula is essentially exact, so a
        // Monte-Carlo probe run pins it within +/-10 percent relative.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut f = filter(1000, 1);
        for _ in 0..1000 {
            f.insert(&rng.random::<u64>().to_le_bytes());
        }
        let probes = 200_000u32;
        let hits = (0..probes)
            .filter(|_| f.contains(&rng.random::<u64>().to_le_bytes()))
            .count();
        let measured = hits as f64 / f64::from(probes);
        let analytic = false_positive_rate(1000, 1000, 1);
        assert!(
            (measured - analytic).abs() / analytic < 0.10,
            "measured {measured}, analytic {analytic}"
        );
    }

    proptest! {
        #[test]
        fn no_false_negatives(items in proptest::collection::vec(
            proptest::collection::vec(any::<u8>(), 0..32), 1..64,
        )) {
            let mut f = filter(1024, 4);
            for item in &items {
                f.insert(item);
            }
            for item in &items {
                prop_assert!(f.contains(item));
            }
        }

        #[test]
        fn union_homomorphism(
            a in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 0..16), 0..32),
            b in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 0..16), 0..32),
        ) {
            let mut fa = filter(512, 3);
            let mut fb = filter(512, 3);
            let mut fab = filter(512, 3);
            for item in &a {
                fa.insert(item);
                fab.insert(item);
            }
            for item in &b {
                fb.insert(item);
                fab.insert(item);
            }
            let union = fa.union(&fb).unwrap();
            prop_assert_eq!(union.bit_vector(), fab.bit_vector());
        }

        #[test]
        fn round_trip_any_filter(
            m in 1u64..2048,
            k in 1u32..16,
            items in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 0..16), 0..32),
        ) {
            let mut f = filter(m, k);
            for item in &items {
                f.insert(item);
            }
            let back = BloomFilter::from_bytes(&f.to_bytes()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
