//! Gossip message wire format.
//!
//! A payload carries the sender's membership digest plus zero or more
//! per-contributor filter advertisements. Contribution filters embed the
//! standard bloom transport encoding, so a single-contribution refresh
//! message costs exactly one serialized filter plus framing.
//!
//! Layout, all integers little-endian: sender `u64`, membership count
//! `u32`, contribution count `u32`, then `(peer u64, last_heard u32)`
//! entries, then `(contributor u64, epoch u32, len u32, filter bytes)`
//! entries.

use thiserror::Error;

use crate::bloom::{BloomError, BloomFilter};

#[derive(Debug, Error)]
pub enum PayloadError {
    #[error("payload truncated at byte {0}")]
    Truncated(usize),
    #[error("trailing garbage: {0} unread bytes")]
    TrailingBytes(usize),
    #[error("embedded filter: {0}")]
    Filter(#[from] BloomError),
}

/// One contributor's advertisement: the full filter of its local files,
/// tagged with the round it was (re)built.
#[derive(Debug, Clone, PartialEq)]
pub struct ContributionMsg {
    pub contributor: u64,
    pub epoch: u32,
    pub filter: BloomFilter,
}

/// One gossip message.
#[derive(Debug, Clone, PartialEq)]
pub struct GossipPayload {
    pub sender: u64,
    /// Sender's membership view: `(peer, last heard round)`.
    pub membership: Vec<(u64, u32)>,
    pub contributions: Vec<ContributionMsg>,
}

impl GossipPayload {
    pub fn serialized_len(&self) -> usize {
        16 + 12 * self.membership.len()
            + self
                .contributions
                .iter()
                .map(|c| 16 + c.filter.serialized_len())
                .sum::<usize>()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.serialized_len());
        out.extend_from_slice(&self.sender.to_le_bytes());
        out.extend_from_slice(&(self.membership.len() as u32).to_le_bytes());
        out.extend_from_slice(&(self.contributions.len() as u32).to_le_bytes());
        for &(peer, last_heard) in &self.membership {
            out.extend_from_slice(&peer.to_le_bytes());
            out.extend_from_slice(&last_heard.to_le_bytes());
        }
        for c in &self.contributions {
            let filter = c.filter.to_bytes();
            out.extend_from_slice(&c.contributor.to_le_bytes());
            out.extend_from_slice(&c.epoch.to_le_bytes());
            out.extend_from_slice(&(filter.len() as u32).to_le_bytes());
            out.extend_from_slice(&filter);
        }
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<GossipPayload, PayloadError> {
        let mut cursor = Cursor { buf, pos: 0 };
        let sender = cursor.u64()?;
        let n_membership = cursor.u32()? as usize;
        let n_contributions = cursor.u32()? as usize;
        let mut membership = Vec::with_capacity(n_membership.min(1 << 16));
        for _ in 0..n_membership {
            let peer = cursor.u64()?;
            let last_heard = cursor.u32()?;
            membership.push((peer, last_heard));
        }
        let mut contributions = Vec::with_capacity(n_contributions.min(1 << 16));
        for _ in 0..n_contributions {
            let contributor = cursor.u64()?;
            let epoch = cursor.u32()?;
            let len = cursor.u32()? as usize;
            let raw = cursor.bytes(len)?;
            contributions.push(ContributionMsg {
                contributor,
                epoch,
                filter: BloomFilter::from_bytes(raw)?,
            });
        }
        if cursor.pos != buf.len() {
            return Err(PayloadError::TrailingBytes(buf.len() - cursor.pos));
        }
        Ok(GossipPayload {
            sender,
            membership,
            contributions,
        })
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn bytes(&mut self, n: usize) -> Result<&[u8], PayloadError> {
        if self.buf.len() - self.pos < n {
            return Err(PayloadError::Truncated(self.pos));
        }
        let out = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, PayloadError> {
        Ok(u32::from_le_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, PayloadError> {
        Ok(u64::from_le_bytes(self.bytes(8)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloom::BloomParams;

    fn sample_payload() -> GossipPayload {
        let mut filter = BloomFilter::new(BloomParams::new(128, 3).unwrap()).unwrap();
        filter.insert(b"file-1");
        filter.insert(b"file-2");
        GossipPayload {
            sender: 7,
            membership: vec![(1, 10), (2, 12)],
            contributions: vec![ContributionMsg {
                contributor: 7,
                epoch: 12,
                filter,
            }],
        }
    }

    #[test]
    fn round_trip() {
        let payload = sample_payload();
        let bytes = payload.to_bytes();
        assert_eq!(bytes.len(), payload.serialized_len());
        assert_eq!(GossipPayload::from_bytes(&bytes).unwrap(), payload);
    }

    #[test]
    fn filter_portion_is_exactly_bloom_encoding() {
        let payload = sample_payload();
        let filter_bytes = payload.contributions[0].filter.to_bytes();
        let framing = 16 + 12 * payload.membership.len() + 16;
        assert_eq!(payload.serialized_len(), framing + filter_bytes.len());
        assert!(payload
            .to_bytes()
            .windows(filter_bytes.len())
            .any(|w| w == filter_bytes.as_slice()));
    }

    #[test]
    fn membership_only_payload() {
        let payload = GossipPayload {
            sender: 3,
            membership: vec![(1, 5)],
            contributions: Vec::new(),
        };
        let bytes = payload.to_bytes();
        assert_eq!(bytes.len(), 16 + 12);
        assert_eq!(GossipPayload::from_bytes(&bytes).unwrap(), payload);
    }

    #[test]
    fn malformed_payloads_rejected() {
        let bytes = sample_payload().to_bytes();
        assert!(GossipPayload::from_bytes(&bytes[..bytes.len() - 3]).is_err());
        assert!(GossipPayload::from_bytes(&bytes[..10]).is_err());
        let mut extended = bytes.clone();
        extended.push(0);
        assert!(matches!(
            GossipPayload::from_bytes(&extended),
            Err(PayloadError::TrailingBytes(1))
        ));
        let mut corrupt = bytes;
        // Flip a byte inside the embedded filter magic.
        let filter_start = 16 + 12 * 2 + 16;
        corrupt[filter_start] ^= 0xff;
        assert!(matches!(
            GossipPayload::from_bytes(&corrupt),
            Err(PayloadError::Filter(_))
        ));
    }
}
