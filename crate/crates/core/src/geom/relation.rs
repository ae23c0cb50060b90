use std::fmt;

use serde::{Deserialize, Serialize};

use super::{centroid, distance, Geometry, Point};

/// Objects closer than this (boundary to boundary) are "next to" each other.
pub const NEXT_TO_DISTANCE_M: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    LeftOf,
    TopOf,
    RightOf,
    BottomOf,
    NextTo,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::LeftOf,
        Relation::TopOf,
        Relation::RightOf,
        Relation::BottomOf,
        Relation::NextTo,
    ];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    /// Phrase used when rendering a relation clause.
    pub fn phrase(self) -> &'static str {
        match self {
            Relation::LeftOf => "on the left of",
            Relation::TopOf => "on top of",
            Relation::RightOf => "on the right of",
            Relation::BottomOf => "at the bottom of",
            Relation::NextTo => "next to",
        }
    }

    pub fn converse(self) -> Relation {
        match self {
            Relation::LeftOf => Relation::RightOf,
            Relation::RightOf => Relation::LeftOf,
            Relation::TopOf => Relation::BottomOf,
            Relation::BottomOf => Relation::TopOf,
            Relation::NextTo => Relation::NextTo,
        }
    }
}

/// Set of relations holding from one object to another.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RelationSet(u8);

impl RelationSet {
    pub fn insert(&mut self, r: Relation) {
        self.0 |= r.bit();
    }

    pub fn contains(self, r: Relation) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Relation> {
        Relation::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Relations of `a` with respect to `b` from precomputed centroids and
/// boundary distance. North is +y, so "top of" means a larger y.
pub fn relations_from_parts(centroid_a: Point, centroid_b: Point, boundary_distance: f64) -> RelationSet {
    let mut set = RelationSet::default();
    if centroid_a.x < centroid_b.x {
        set.insert(Relation::LeftOf);
    }
    if centroid_a.x > centroid_b.x {
        set.insert(Relation::RightOf);
    }
    if centroid_a.y > centroid_b.y {
        set.insert(Relation::TopOf);
    }
    if centroid_a.y < centroid_b.y {
        set.insert(Relation::BottomOf);
    }
    if boundary_distance < NEXT_TO_DISTANCE_M {
        set.insert(Relation::NextTo);
    }
    set
}

pub fn relative_position(a: &Geometry, b: &Geometry) -> RelationSet {
    relations_from_parts(centroid(a).point, centroid(b).point, distance(a, b))
}
