//! Draw-dominoes rules for two players: dealing, legal moves, state
//! transition, termination, and scoring.
//!
//! The game: tiles are dealt, the starter opens the train, and players
//! alternate placing a tile that matches a free end. A player with no
//! placement must pass; two consecutive passes block the game. A player who
//! empties her hand wins her opponent's remaining pips; in a blocked game
//! the lighter hand wins the pip difference.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tile::{pip_sum, Tile, TileSet};

/// One of the two players. Serialized as `1` / `2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// +1 for player 1, -1 for player 2; converts player-1-scale values to
    /// this player's perspective and back.
    pub fn sign(self) -> f64 {
        match self {
            Player::One => 1.0,
            Player::Two => -1.0,
        }
    }

    pub fn from_number(n: u8) -> Result<Player> {
        match n {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            _ => Err(Error::Parameter(format!("player index {n} not in {{1,2}}"))),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

impl Serialize for Player {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Player {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Player, D::Error> {
        let n = u8::deserialize(deserializer)?;
        Player::from_number(n).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// A move: place a tile on a free end of the given pip value, or pass.
///
/// On an empty train the placement's `end` is the tile's low half by
/// convention. Two placements of one tile are distinct moves exactly when
/// their end values differ, which is equivalent to the resulting free-end
/// multisets being distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Place { tile: Tile, end: u8 },
    Pass,
}

impl Move {
    pub fn place(tile: Tile, end: u8) -> Move {
        Move::Place { tile, end }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Move::Pass)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Place { tile, end } => write!(f, "P {}@{}", tile, end),
            Move::Pass => write!(f, "pass"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Move> {
        let s = s.trim();
        if s == "pass" {
            return Ok(Move::Pass);
        }
        let bad = || Error::Parameter(format!("malformed move {s:?}, expected \"P a-b@e\" or \"pass\""));
        let rest = s.strip_prefix("P ").ok_or_else(bad)?;
        let (tile_part, end_part) = rest.split_once('@').ok_or_else(bad)?;
        let (a, b) = tile_part.split_once('-').ok_or_else(bad)?;
        let low: u8 = a.trim().parse().map_err(|_| bad())?;
        let high: u8 = b.trim().parse().map_err(|_| bad())?;
        if low > high {
            return Err(bad());
        }
        let end: u8 = end_part.trim().parse().map_err(|_| bad())?;
        Ok(Move::Place { tile: Tile::new(low, high), end })
    }
}

impl Serialize for Move {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Move {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Move, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e: Error| D::Error::custom(e.to_string()))
    }
}

/// The two dealt hands. Matches the deal-file JSON schema
/// `{"max_pip": n, "hands": [[[a,b],...],[[a,b],...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deal {
    pub max_pip: u8,
    pub hands: [Vec<Tile>; 2],
}

impl Deal {
    /// Builds a deal from explicit hands, validating the invariants:
    /// tiles drawn from the double-`max_pip` set, no duplicates, disjoint
    /// hands of equal size.
    pub fn new(max_pip: u8, hand1: Vec<Tile>, hand2: Vec<Tile>) -> Result<Deal> {
        let mut deal = Deal { max_pip, hands: [hand1, hand2] };
        deal.hands[0].sort();
        deal.hands[1].sort();
        deal.validate()?;
        Ok(deal)
    }

    pub fn validate(&self) -> Result<()> {
        if self.hands[0].len() != self.hands[1].len() {
            return Err(Error::Parameter(format!(
                "hands must be the same size, got {} and {}",
                self.hands[0].len(),
                self.hands[1].len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for hand in &self.hands {
            for &t in hand {
                if t.high() > self.max_pip {
                    return Err(Error::Parameter(format!(
                        "tile {t} outside double-{} set",
                        self.max_pip
                    )));
                }
                if !seen.insert(t) {
                    return Err(Error::Parameter(format!("tile {t} dealt twice")));
                }
            }
        }
        Ok(())
    }

    pub fn hand(&self, player: Player) -> &[Tile] {
        &self.hands[player.index()]
    }

    /// Parses the deal-file JSON schema.
    pub fn from_json(text: &str) -> Result<Deal> {
        let deal: Deal = serde_json::from_str(text)
            .map_err(|e| Error::Parameter(format!("bad deal file: {e}")))?;
        let deal = Deal::new(deal.max_pip, deal.hands[0].clone(), deal.hands[1].clone())?;
        Ok(deal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("deal serialization cannot fail")
    }

    /// Stable 64-bit FNV-1a hash of the canonical deal encoding, printed as
    /// 16 hex digits in reports.
    pub fn hash_hex(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.max_pip);
        for hand in &self.hands {
            eat(0xff);
            for t in hand {
                eat(t.low());
                eat(t.high());
            }
        }
        format!("{h:016x}")
    }
}

/// Deals `per_player` tiles to each player from `set`, deterministically for
/// a given seed. Undealt tiles are dead: there is no boneyard to draw from.
pub fn deal_random(set: &TileSet, per_player: usize, seed: u64) -> Result<Deal> {
    if 2 * per_player > set.len() {
        return Err(Error::Parameter(format!(
            "cannot deal 2x{per_player} tiles from a {}-tile set",
            set.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tiles = set.tiles().to_vec();
    tiles.shuffle(&mut rng);
    let hand1 = tiles[..per_player].to_vec();
    let hand2 = tiles[per_player..2 * per_player].to_vec();
    Deal::new(set.max_pip(), hand1, hand2)
}

/// Who opens the game and whether the opening move is dictated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum OpeningRule {
    /// The holder of the largest double moves first and must place it.
    BiggestDoubleForced,
    /// The given player moves first and may place any tile she holds.
    StarterFreeChoice { starter: Player },
}

impl fmt::Display for OpeningRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpeningRule::BiggestDoubleForced => write!(f, "double"),
            OpeningRule::StarterFreeChoice { starter } => write!(f, "free:{}", starter.number()),
        }
    }
}

impl FromStr for OpeningRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<OpeningRule> {
        match s {
            "double" => Ok(OpeningRule::BiggestDoubleForced),
            "free:1" => Ok(OpeningRule::StarterFreeChoice { starter: Player::One }),
            "free:2" => Ok(OpeningRule::StarterFreeChoice { starter: Player::Two }),
            _ => Err(Error::Parameter(format!(
                "unknown opening rule {s:?}, expected free:<1|2> or double"
            ))),
        }
    }
}

/// Resolves the opening rule against a deal: who starts and, for the
/// biggest-double rule, the dictated first move.
///
/// Errors with a rule error when the biggest-double rule finds no double in
/// either hand; callers are expected to fall back to a free-choice opening.
pub fn opening(deal: &Deal, rule: OpeningRule) -> Result<(Player, Option<Move>)> {
    match rule {
        OpeningRule::StarterFreeChoice { starter } => Ok((starter, None)),
        OpeningRule::BiggestDoubleForced => {
            let mut best: Option<(Tile, Player)> = None;
            for player in [Player::One, Player::Two] {
                for &t in deal.hand(player) {
                    if t.is_double() && best.map_or(true, |(b, _)| t.high() > b.high()) {
                        best = Some((t, player));
                    }
                }
            }
            match best {
                Some((tile, player)) => Ok((player, Some(Move::place(tile, tile.low())))),
                None => Err(Error::Rule("no double in either hand".into())),
            }
        }
    }
}

/// A tile as laid on the table, oriented left-to-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacedTile {
    pub left: u8,
    pub right: u8,
}

impl PlacedTile {
    pub fn tile(&self) -> Tile {
        Tile::new(self.left, self.right)
    }
}

/// Terminal result of a game. Payoffs are zero-sum and reported on the
/// player-1 scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A player emptied her hand and wins the opponent's remaining pips.
    Domino { winner: Player, payoff_to_player1: i32 },
    /// Two consecutive passes; the lighter hand wins the pip difference,
    /// equal hands draw.
    Blocked { winner: Option<Player>, payoff_to_player1: i32 },
}

impl Outcome {
    pub fn payoff_to_player1(&self) -> i32 {
        match *self {
            Outcome::Domino { payoff_to_player1, .. } => payoff_to_player1,
            Outcome::Blocked { payoff_to_player1, .. } => payoff_to_player1,
        }
    }

    pub fn payoff_to(&self, player: Player) -> i32 {
        match player {
            Player::One => self.payoff_to_player1(),
            Player::Two => -self.payoff_to_player1(),
        }
    }

    pub fn winner(&self) -> Option<Player> {
        match *self {
            Outcome::Domino { winner, .. } => Some(winner),
            Outcome::Blocked { winner, .. } => winner,
        }
    }
}

/// Key identifying everything about a state that the remaining game depends
/// on: the hands, the free-end values, whose turn it is, and the pass count.
/// The train's layout and the period counter are deliberately excluded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateKey {
    hands: [Vec<Tile>; 2],
    ends: Option<(u8, u8)>,
    to_move: Player,
    consecutive_passes: u8,
}

/// Full game position. A pure value: `apply_move` returns a new state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    hands: [Vec<Tile>; 2],
    train: Vec<PlacedTile>,
    free_ends: Option<(u8, u8)>,
    to_move: Player,
    consecutive_passes: u8,
    period: u32,
}

impl GameState {
    /// Initial state: full hands, empty train, `starter` to move at period 1.
    pub fn new(deal: &Deal, starter: Player) -> GameState {
        let mut hands = deal.hands.clone();
        hands[0].sort();
        hands[1].sort();
        GameState {
            hands,
            train: Vec::new(),
            free_ends: None,
            to_move: starter,
            consecutive_passes: 0,
            period: 1,
        }
    }

    pub fn hand(&self, player: Player) -> &[Tile] {
        &self.hands[player.index()]
    }

    pub fn train(&self) -> &[PlacedTile] {
        &self.train
    }

    /// The two open end values as laid, left then right. `None` while the
    /// train is empty.
    pub fn free_ends(&self) -> Option<(u8, u8)> {
        self.free_ends
    }

    /// Free ends sorted ascending, for display and comparison.
    pub fn free_ends_sorted(&self) -> Option<(u8, u8)> {
        self.free_ends.map(|(a, b)| (a.min(b), a.max(b)))
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn consecutive_passes(&self) -> u8 {
        self.consecutive_passes
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal_outcome().is_some()
    }

    pub fn key(&self) -> StateKey {
        StateKey {
            hands: self.hands.clone(),
            ends: self.free_ends_sorted(),
            to_move: self.to_move,
            consecutive_passes: self.consecutive_passes,
        }
    }

    /// All legal moves for the player to move, ordered by tile then end
    /// value. Exactly `[Pass]` when no placement exists. Errors on terminal
    /// states.
    pub fn legal_moves(&self) -> Result<Vec<Move>> {
        if self.is_terminal() {
            return Err(Error::State("no moves in a terminal state".into()));
        }
        let hand = &self.hands[self.to_move.index()];
        let moves: Vec<Move> = match self.free_ends {
            None => hand.iter().map(|&t| Move::place(t, t.low())).collect(),
            Some((left, right)) => {
                let mut out = Vec::new();
                for &t in hand {
                    let mut ends = [0u8; 2];
                    let mut n = 0;
                    for e in [left, right] {
                        if t.matches(e) && !ends[..n].contains(&e) {
                            ends[n] = e;
                            n += 1;
                        }
                    }
                    ends[..n].sort_unstable();
                    for &e in &ends[..n] {
                        out.push(Move::place(t, e));
                    }
                }
                out
            }
        };
        if moves.is_empty() {
            Ok(vec![Move::Pass])
        } else {
            Ok(moves)
        }
    }

    /// Count of distinct placements `player` could make against the current
    /// free ends, regardless of whose turn it is. On an empty train every
    /// held tile is one placement.
    pub fn placement_count(&self, player: Player) -> usize {
        let hand = &self.hands[player.index()];
        match self.free_ends {
            None => hand.len(),
            Some((left, right)) => {
                let mut count = 0;
                for &t in hand {
                    if t.matches(left) {
                        count += 1;
                    }
                    if right != left && t.matches(right) {
                        count += 1;
                    }
                }
                count
            }
        }
    }

    /// Applies a legal move, returning the successor state. Placements remove
    /// the tile from the mover's hand, extend the train, and reset the pass
    /// counter; passes increment it. The turn flips and the period advances.
    pub fn apply_move(&self, mv: Move) -> Result<GameState> {
        let legal = self.legal_moves().map_err(|_| Error::IllegalMove {
            mv,
            reason: "state is terminal".into(),
        })?;
        if !legal.contains(&mv) {
            return Err(Error::IllegalMove {
                mv,
                reason: format!("not among legal moves {:?}", legal.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
            });
        }
        let mut next = self.clone();
        match mv {
            Move::Pass => {
                next.consecutive_passes += 1;
            }
            Move::Place { tile, end } => {
                let hand = &mut next.hands[self.to_move.index()];
                let pos = hand.iter().position(|&t| t == tile).expect("legal move holds tile");
                hand.remove(pos);
                match next.free_ends {
                    None => {
                        next.train.push(PlacedTile { left: tile.low(), right: tile.high() });
                        next.free_ends = Some((tile.low(), tile.high()));
                    }
                    Some((left, right)) => {
                        let exposed = tile.other_end(end);
                        if end == right {
                            next.train.push(PlacedTile { left: end, right: exposed });
                            next.free_ends = Some((left, exposed));
                        } else {
                            next.train.insert(0, PlacedTile { left: exposed, right: end });
                            next.free_ends = Some((exposed, right));
                        }
                    }
                }
                next.consecutive_passes = 0;
            }
        }
        next.to_move = self.to_move.opponent();
        next.period = self.period + 1;
        Ok(next)
    }

    /// Terminal outcome, if the game is over: a domino when a hand is empty,
    /// blocked after two consecutive passes, otherwise `None`.
    pub fn terminal_outcome(&self) -> Option<Outcome> {
        for player in [Player::One, Player::Two] {
            if self.hands[player.index()].is_empty() {
                let opp_pips = pip_sum(self.hand(player.opponent())) as i32;
                return Some(Outcome::Domino {
                    winner: player,
                    payoff_to_player1: match player {
                        Player::One => opp_pips,
                        Player::Two => -opp_pips,
                    },
                });
            }
        }
        if self.consecutive_passes >= 2 {
            let p1 = pip_sum(self.hand(Player::One)) as i32;
            let p2 = pip_sum(self.hand(Player::Two)) as i32;
            let payoff = p2 - p1;
            let winner = match payoff.cmp(&0) {
                std::cmp::Ordering::Greater => Some(Player::One),
                std::cmp::Ordering::Less => Some(Player::Two),
                std::cmp::Ordering::Equal => None,
            };
            return Some(Outcome::Blocked { winner, payoff_to_player1: payoff });
        }
        None
    }
}

#[cfg(test)]
pub(crate) fn example_hands() -> (Vec<Tile>, Vec<Tile>) {
    let h1 = vec![Tile::new(0, 0), Tile::new(0, 1), Tile::new(2, 2)];
    let h2 = vec![Tile::new(0, 2), Tile::new(1, 1), Tile::new(1, 2)];
    (h1, h2)
}
