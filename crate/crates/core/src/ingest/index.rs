//! Static packed R-tree built with Sort-Tile-Recursive bulk loading.

use crate::geom::Rect;

const DEFAULT_NODE_SIZE: usize = 16;

/// Read-only R-tree over item bounding boxes.
///
/// Level 0 holds the item boxes in STR order; each higher level holds one
/// box per group of `node_size` children of the level below.
#[derive(Debug, Clone)]
pub struct PackedRTree {
    node_size: usize,
    levels: Vec<Vec<Rect>>,
    /// Item id of each level-0 slot.
    items: Vec<usize>,
}

impl PackedRTree {
    pub fn bulk_load(boxes: &[Rect]) -> Self {
        Self::bulk_load_with_node_size(boxes, DEFAULT_NODE_SIZE)
    }

    pub fn bulk_load_with_node_size(boxes: &[Rect], node_size: usize) -> Self {
        assert!(node_size >= 2, "node size must be at least 2");
        let mut order: Vec<usize> = (0..boxes.len()).collect();
        str_sort(&mut order, boxes, node_size);

        let leaf: Vec<Rect> = order.iter().map(|&i| boxes[i]).collect();
        let mut levels = vec![leaf];
        while levels.last().is_some_and(|l| l.len() > 1) {
            let below = levels.last().expect("non-empty");
            let parent: Vec<Rect> = below
                .chunks(node_size)
                .map(|c| c.iter().skip(1).fold(c[0], |acc, r| acc.union(r)))
                .collect();
            levels.push(parent);
        }
        Self {
            node_size,
            levels,
            items: order,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Ids of every item whose box intersects `query` (closed boundaries),
    /// in no particular order.
    pub fn search(&self, query: &Rect) -> Vec<usize> {
        let mut out = Vec::new();
        if self.items.is_empty() {
            return out;
        }
        let top = self.levels.len() - 1;
        let mut stack: Vec<(usize, usize)> = (0..self.levels[top].len()).map(|i| (top, i)).collect();
        while let Some((level, idx)) = stack.pop() {
            if !self.levels[level][idx].intersects(query) {
                continue;
            }
            if level == 0 {
                out.push(self.items[idx]);
                continue;
            }
            let below = self.levels[level - 1].len();
            let start = idx * self.node_size;
            let end = (start + self.node_size).min(below);
            stack.extend((start..end).map(|c| (level - 1, c)));
        }
        out
    }
}

/// Sort-Tile-Recursive ordering: vertical slices by center x, each slice
/// sorted by center y.
fn str_sort(order: &mut [usize], boxes: &[Rect], node_size: usize) {
    let n = order.len();
    if n <= node_size {
        return;
    }
    let leaves = n.div_ceil(node_size);
    let slices = (leaves as f64).sqrt().ceil() as usize;
    let slice_len = slices * node_size;

    let cx = |i: &usize| boxes[*i].min_x + boxes[*i].max_x;
    let cy = |i: &usize| boxes[*i].min_y + boxes[*i].max_y;
    order.sort_by(|a, b| cx(a).total_cmp(&cx(b)).then(a.cmp(b)));
    for chunk in order.chunks_mut(slice_len) {
        chunk.sort_by(|a, b| cy(a).total_cmp(&cy(b)).then(a.cmp(b)));
    }
}
