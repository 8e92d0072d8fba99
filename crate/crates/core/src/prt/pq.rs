/// Priority queue over small integer ranks: an array of per-rank lists plus
/// the current extreme ranks. Insert is O(1); extract-max is O(1) plus the
/// cells marched over when the top list empties.
#[derive(Debug, Clone)]
pub struct RankPriorityQueue<T> {
    cells: Vec<Vec<T>>,
    r_max: Option<u32>,
    r_min: Option<u32>,
    len: usize,
    marches: u64,
    operations: u64,
}

impl<T> RankPriorityQueue<T> {
    /// A queue accepting ranks in `[0, ranks)`.
    pub fn new(ranks: u32) -> Self {
        RankPriorityQueue {
            cells: (0..ranks).map(|_| Vec::new()).collect(),
            r_max: None,
            r_min: None,
            len: 0,
            marches: 0,
            operations: 0,
        }
    }

    pub fn insert(&mut self, rank: u32, item: T) {
        self.operations += 1;
        self.cells[rank as usize].push(item);
        self.len += 1;
        self.r_max = Some(self.r_max.map_or(rank, |m| m.max(rank)));
        self.r_min = Some(self.r_min.map_or(rank, |m| m.min(rank)));
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.r_max
    }

    pub fn min_rank(&self) -> Option<u32> {
        self.r_min
    }

    pub fn extract_max(&mut self) -> Option<(u32, T)> {
        let top = self.r_max?;
        self.operations += 1;
        let item = self.cells[top as usize].pop().expect("r_max points at a non-empty cell");
        self.len -= 1;
        if self.len == 0 {
            self.r_max = None;
            self.r_min = None;
        } else if self.cells[top as usize].is_empty() {
            let floor = self.r_min.expect("non-empty queue has r_min");
            let mut r = top;
            while self.cells[r as usize].is_empty() {
                r -= 1;
                self.marches += 1;
                debug_assert!(r >= floor);
            }
            self.r_max = Some(r);
        }
        Some((top, item))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Cells stepped over while lowering `r_max`.
    pub fn marches(&self) -> u64 {
        self.marches
    }

    pub fn operations(&self) -> u64 {
        self.operations
    }
}
