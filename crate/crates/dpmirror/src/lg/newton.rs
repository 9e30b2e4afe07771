//! Lattice-point counts of the Newton polygon with vertices
//! `(-1,-1)`, `(1,0)`, `(-1,k)`.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NewtonCount {
    pub interior: usize,
    pub boundary: usize,
    /// Twice the area, by the shoelace formula.
    pub two_volume: usize,
}

impl NewtonCount {
    /// Pick's identity `2A = 2i + b - 2`.
    pub fn pick_holds(&self) -> bool {
        2 * self.interior + self.boundary == self.two_volume + 2
    }
}

pub fn newton_vertices(k: usize) -> [(i64, i64); 3] {
    [(-1, -1), (1, 0), (-1, k as i64)]
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counts by scanning every lattice point of the bounding box.
pub fn newton_polygon_count(k: usize) -> NewtonCount {
    let v = newton_vertices(k);
    let orient = cross(v[0], v[1], v[2]).signum();
    let (mut interior, mut boundary) = (0, 0);
    for x in -1..=1 {
        for y in -1..=k as i64 {
            let c: Vec<i64> = (0..3).map(|i| orient * cross(v[i], v[(i + 1) % 3], (x, y))).collect();
            if c.iter().all(|&d| d > 0) {
                interior += 1;
            } else if c.iter().all(|&d| d >= 0) {
                boundary += 1;
            }
        }
    }
    let two_volume = cross(v[0], v[1], v[2]).unsigned_abs() as usize;
    NewtonCount { interior, boundary, two_volume }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(newton_polygon_count(5), NewtonCount { interior: 3, boundary: 8, two_volume: 12 });
        assert_eq!(newton_polygon_count(3), NewtonCount { interior: 2, boundary: 6, two_volume: 8 });
        assert_eq!(newton_polygon_count(7), NewtonCount { interior: 4, boundary: 10, two_volume: 16 });
        for k in (3..40).step_by(2) {
            let c = newton_polygon_count(k);
            assert!(c.pick_holds());
            assert_eq!(c.two_volume, 2 * k + 2);
        }
    }
}
