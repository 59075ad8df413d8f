//! A scaled-down Twitter clone. Every user owns three objects: a follower
//! set, a wall (tweet id to content) and a timeline (timestamp to tweet id).

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::crdts::{GMap, GSet};
use crate::lattice::{cost, Canonical, Lattice, ParseError, Parser};
use crate::{ObjectId, ReplicaId, Token};

use super::{Update, Workload, Zipf};

pub const TWEET_ID_BYTES: usize = 31;
pub const CONTENT_BYTES: usize = 270;
const USER_ID_BYTES: usize = 8;
const TIMESTAMP_BYTES: usize = 8;

/// Any of a user's three objects. Each object only ever uses one component;
/// sharing a type lets all objects live in one replica.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RetwisObject {
    followers: GSet<u32>,
    wall: GMap<Token, GSet<Token>>,
    timeline: GMap<u64, GSet<Token>>,
}

impl RetwisObject {
    pub fn followers(&self) -> &GSet<u32> {
        &self.followers
    }

    pub fn wall(&self) -> &GMap<Token, GSet<Token>> {
        &self.wall
    }

    pub fn timeline(&self) -> &GMap<u64, GSet<Token>> {
        &self.timeline
    }

    pub fn follow_delta(&self, follower: u32) -> Self {
        RetwisObject {
            followers: self.followers.add_delta(follower),
            ..Self::default()
        }
    }

    pub fn post_delta(&self, tweet: Token, content: Token) -> Self {
        RetwisObject {
            wall: self.wall.update_delta(tweet, |c| c.add_delta(content)),
            ..Self::default()
        }
    }

    pub fn timeline_delta(&self, stamp: u64, tweet: Token) -> Self {
        RetwisObject {
            timeline: self.timeline.update_delta(stamp, |t| t.add_delta(tweet)),
            ..Self::default()
        }
    }

    /// Up to `n` tweet ids, newest first.
    pub fn recent(&self, n: usize) -> Vec<Token> {
        let entries: Vec<_> = self.timeline.iter().collect();
        cost::visit(entries.len().min(n));
        entries
            .into_iter()
            .rev()
            .flat_map(|(_, ids)| ids.iter().copied())
            .take(n)
            .collect()
    }
}

impl Lattice for RetwisObject {
    fn bottom() -> Self {
        Self::default()
    }

    fn is_bottom(&self) -> bool {
        self.followers.is_bottom() && self.wall.is_bottom() && self.timeline.is_bottom()
    }

    fn join_assign(&mut self, other: &Self) {
        self.followers.join_assign(&other.followers);
        self.wall.join_assign(&other.wall);
        self.timeline.join_assign(&other.timeline);
    }

    fn leq(&self, other: &Self) -> bool {
        self.followers.leq(&other.followers)
            && self.wall.leq(&other.wall)
            && self.timeline.leq(&other.timeline)
    }

    fn split(&self) -> Vec<Self> {
        let f = self.followers.split().into_iter().map(|followers| RetwisObject {
            followers,
            ..Self::default()
        });
        let w = self.wall.split().into_iter().map(|wall| RetwisObject {
            wall,
            ..Self::default()
        });
        let t = self.timeline.split().into_iter().map(|timeline| RetwisObject {
            timeline,
            ..Self::default()
        });
        f.chain(w).chain(t).collect()
    }

    fn weight(&self) -> usize {
        self.followers.weight() + self.wall.weight() + self.timeline.weight()
    }

    /// Tweet ids and contents at their real sizes; user ids and timestamps
    /// as eight-byte integers.
    fn byte_size(&self) -> usize {
        let wall: usize = self
            .wall
            .iter()
            .map(|(_, c)| TWEET_ID_BYTES + CONTENT_BYTES * c.len())
            .sum();
        let timeline: usize = self
            .timeline
            .iter()
            .map(|(_, ids)| TIMESTAMP_BYTES + TWEET_ID_BYTES * ids.len())
            .sum();
        USER_ID_BYTES * self.followers.len() + wall + timeline
    }
}

impl Canonical for RetwisObject {
    fn encode(&self, out: &mut String) {
        out.push('(');
        self.followers.encode(out);
        out.push(',');
        self.wall.encode(out);
        out.push(',');
        self.timeline.encode(out);
        out.push(')');
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        p.expect('(')?;
        let followers = GSet::decode(p)?;
        p.expect(',')?;
        let wall = GMap::decode(p)?;
        p.expect(',')?;
        let timeline = GMap::decode(p)?;
        p.expect(')')?;
        Ok(RetwisObject {
            followers,
            wall,
            timeline,
        })
    }
}

/// An application-level operation before expansion into CRDT updates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RetwisOp {
    Follow { follower: u32, followee: u32 },
    Post { author: u32, tweet: Token, content: Token, stamp: u64, followers: Vec<u32> },
    Timeline { user: u32 },
}

impl RetwisOp {
    pub fn updates(&self) -> usize {
        match self {
            RetwisOp::Follow { .. } => 1,
            RetwisOp::Post { followers, .. } => 1 + followers.len(),
            RetwisOp::Timeline { .. } => 0,
        }
    }
}

/// Operation mix: follow 15%, post 35%, timeline 50%. Acting and target
/// users are drawn from a Zipf distribution, so a higher exponent makes a
/// few users (and their objects) hot.
///
/// The generator keeps its own copy of the follower graph and fans posts out
/// according to it. That keeps the sequence of updates a function of the seed
/// alone, identical for every protocol.
#[derive(Debug, Clone)]
pub struct Retwis {
    users: u32,
    nodes: usize,
    zipf: Zipf,
    exponent: f64,
    total: u64,
    issued: u64,
    followers: Vec<BTreeSet<u32>>,
    posts: Vec<u32>,
    contents: Vec<u32>,
}

pub const FOLLOW_SHARE: f64 = 0.15;
pub const POST_SHARE: f64 = 0.35;

impl Retwis {
    pub fn new(nodes: usize, users: u32, exponent: f64, total_ops: u64) -> Self {
        Retwis {
            users,
            nodes,
            zipf: Zipf::new(users as usize, exponent),
            exponent,
            total: total_ops,
            issued: 0,
            followers: vec![BTreeSet::new(); users as usize],
            posts: vec![0; users as usize],
            contents: vec![0; nodes],
        }
    }

    pub fn followers_of(user: u32) -> ObjectId {
        ObjectId(3 * user)
    }

    pub fn wall_of(user: u32) -> ObjectId {
        ObjectId(3 * user + 1)
    }

    pub fn timeline_of(user: u32) -> ObjectId {
        ObjectId(3 * user + 2)
    }

    /// The generator's view of who follows `user`.
    pub fn follower_graph(&self, user: u32) -> &BTreeSet<u32> {
        &self.followers[user as usize]
    }

    fn user(&self, rng: &mut ChaCha8Rng) -> u32 {
        (self.zipf.sample(rng) - 1) as u32
    }

    /// Draws the next application operation for `node`, or `None` once the
    /// global operation budget is spent.
    pub fn draw(&mut self, node: ReplicaId, rng: &mut ChaCha8Rng) -> Option<RetwisOp> {
        if self.issued >= self.total {
            return None;
        }
        let stamp = self.issued;
        self.issued += 1;
        let r: f64 = rng.gen();
        let op = if r < FOLLOW_SHARE {
            let follower = self.user(rng);
            let mut followee = self.user(rng);
            if followee == follower {
                followee = (followee + 1) % self.users;
            }
            self.followers[followee as usize].insert(follower);
            RetwisOp::Follow { follower, followee }
        } else if r < FOLLOW_SHARE + POST_SHARE {
            let author = self.user(rng);
            self.posts[author as usize] += 1;
            let c = &mut self.contents[node.index()];
            *c += 1;
            RetwisOp::Post {
                author,
                tweet: Token::new(author, self.posts[author as usize]),
                content: Token::new(node.0, *c),
                stamp,
                followers: self.followers[author as usize].iter().copied().collect(),
            }
        } else {
            RetwisOp::Timeline {
                user: self.user(rng),
            }
        };
        Some(op)
    }

    pub fn expand(op: RetwisOp) -> Vec<Update<RetwisObject>> {
        match op {
            RetwisOp::Follow { follower, followee } => {
                vec![Update::new(Self::followers_of(followee), move |x: &RetwisObject| {
                    x.follow_delta(follower)
                })]
            }
            RetwisOp::Post { author, tweet, content, stamp, followers } => {
                let mut out = vec![Update::new(Self::wall_of(author), move |x: &RetwisObject| {
                    x.post_delta(tweet, content)
                })];
                for f in followers {
                    out.push(Update::new(Self::timeline_of(f), move |x: &RetwisObject| {
                        x.timeline_delta(stamp, tweet)
                    }));
                }
                out
            }
            // Read path only: the mutator inspects the timeline and changes
            // nothing.
            RetwisOp::Timeline { user } => {
                vec![Update::new(Self::timeline_of(user), |x: &RetwisObject| {
                    let _ = x.recent(10);
                    RetwisObject::bottom()
                })]
            }
        }
    }
}

impl Workload for Retwis {
    type State = RetwisObject;

    fn label(&self) -> String {
        format!("retwis-u{}-z{}", self.users, self.exponent)
    }

    fn periods(&self) -> u64 {
        self.total.div_ceil(self.nodes as u64)
    }

    fn next_ops(
        &mut self,
        node: ReplicaId,
        _: u64,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Update<RetwisObject>> {
        self.draw(node, rng).map(Self::expand).unwrap_or_default()
    }
}
