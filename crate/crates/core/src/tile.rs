//! Domino tiles and tile sets.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported pip value for a set (double-18).
pub const MAX_SUPPORTED_PIP: u8 = 18;

/// A single domino tile in canonical orientation (`low <= high`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    low: u8,
    high: u8,
}

impl Tile {
    /// Builds a tile, swapping the halves into canonical order if needed.
    pub fn new(a: u8, b: u8) -> Tile {
        if a <= b {
            Tile { low: a, high: b }
        } else {
            Tile { low: b, high: a }
        }
    }

    pub fn low(&self) -> u8 {
        self.low
    }

    pub fn high(&self) -> u8 {
        self.high
    }

    /// Total pip count of the tile.
    pub fn pip_value(&self) -> u32 {
        self.low as u32 + self.high as u32
    }

    pub fn is_double(&self) -> bool {
        self.low == self.high
    }

    /// Whether one half of the tile carries `value`.
    pub fn matches(&self, value: u8) -> bool {
        self.low == value || self.high == value
    }

    /// The half exposed after attaching the tile to an end of `value`.
    pub fn other_end(&self, value: u8) -> u8 {
        if self.low == value {
            self.high
        } else {
            self.low
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.low, self.high)
    }
}

impl Serialize for Tile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.low, self.high).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Tile, D::Error> {
        let (a, b) = <(u8, u8)>::deserialize(deserializer)?;
        if a > b {
            return Err(D::Error::custom(format!(
                "tile [{a},{b}] must be ordered low,high"
            )));
        }
        Ok(Tile { low: a, high: b })
    }
}

/// The complete double-`max_pip` tile set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    max_pip: u8,
    tiles: Vec<Tile>,
}

impl TileSet {
    pub fn max_pip(&self) -> u8 {
        self.max_pip
    }

    /// All tiles, sorted ascending by (low, high).
    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, tile: Tile) -> bool {
        tile.high <= self.max_pip
    }
}

/// Builds the full double-`max_pip` set: every tile `(a, b)` with `0 <= a <= b <= max_pip`.
pub fn standard_set(max_pip: u8) -> Result<TileSet> {
    if max_pip > MAX_SUPPORTED_PIP {
        return Err(Error::Parameter(format!(
            "max_pip {max_pip} out of range 0..={MAX_SUPPORTED_PIP}"
        )));
    }
    let mut tiles = Vec::with_capacity(set_size(max_pip));
    for low in 0..=max_pip {
        for high in low..=max_pip {
            tiles.push(Tile { low, high });
        }
    }
    tiles.sort();
    Ok(TileSet { max_pip, tiles })
}

/// Number of tiles in a double-`n` set.
pub const fn set_size(n: u8) -> usize {
    (n as usize + 1) * (n as usize + 2) / 2
}

/// Sum of pip counts over a hand. Empty hands sum to zero.
pub fn pip_sum(hand: &[Tile]) -> u32 {
    hand.iter().map(Tile::pip_value).sum()
}
