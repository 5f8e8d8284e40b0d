use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::stream;

pub type Point = [f64; 2];

/// Simple polygon, stored counterclockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0.0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Closed-segment intersection; touching and collinear overlap count.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

impl Polygon {
    /// Validates and orients a vertex list.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::invalid(format!("polygon needs at least 3 vertices, got {}", vertices.len())));
        }
        let p = Polygon { vertices: vertices.clone() };
        if p.signed_area() == 0.0 {
            return Err(Error::invalid("degenerate polygon with zero area"));
        }
        if !p.is_simple() {
            return Err(Error::invalid("polygon edges self-intersect"));
        }
        if p.signed_area() < 0.0 {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    pub fn signed_area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1]).sum::<f64>() / 2.0
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn is_simple(&self) -> bool {
        let e: Vec<_> = self.edges().collect();
        let n = e.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent && segments_intersect(e[i].0, e[i].1, e[j].0, e[j].1) {
                    return false;
                }
            }
        }
        true
    }

    /// Interior or boundary.
    pub fn contains(&self, p: Point) -> bool {
        if self.edges().any(|(a, b)| on_segment(p, a, b)) {
            return true;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// True iff segment `ab` meets any obstacle's interior or boundary.
pub fn segment_collides(a: Point, b: Point, obstacles: &[Polygon]) -> Result<bool> {
    for poly in obstacles {
        if poly.vertices.len() < 3 {
            return Err(Error::invalid("degenerate polygon with fewer than 3 vertices"));
        }
        if poly.contains(a) || poly.contains(b) {
            return Ok(true);
        }
        if poly.edges().any(|(c, d)| segments_intersect(a, b, c, d)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Planar planning environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    /// `(xmin, ymin, xmax, ymax)`
    pub bbox: [f64; 4],
    pub start: Point,
    pub goal: Point,
    pub obstacles: Vec<Polygon>,
}

impl Environment {
    pub fn new(bbox: [f64; 4], start: Point, goal: Point, obstacles: Vec<Polygon>) -> Result<Self> {
        let [x0, y0, x1, y1] = bbox;
        if !(bbox.iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1) {
            return Err(Error::invalid("bounding box must satisfy xmin < xmax and ymin < ymax"));
        }
        let inside_box = |p: Point| p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1;
        for (name, p) in [("start", start), ("goal", goal)] {
            if !inside_box(p) {
                return Err(Error::invalid(format!("{name} lies outside the bounding box")));
            }
            if obstacles.iter().any(|o| o.contains(p)) {
                return Err(Error::Infeasible(format!("{name} lies inside an obstacle")));
            }
        }
        Ok(Environment { bbox, start, goal, obstacles })
    }

    pub fn is_free(&self, p: Point) -> bool {
        !self.obstacles.iter().any(|o| o.contains(p))
    }
}

/// Parses the line format:
///
/// ```text
/// box xmin ymin xmax ymax
/// start x y
/// goal x y
/// poly x1 y1 x2 y2 x3 y3 ...
/// ```
///
/// A `dim 3` line switches points to `x y z` triples; `z` is dropped.
pub fn parse_environment(text: &str) -> Result<Environment> {
    let mut dim = 2;
    let mut bbox = None;
    let mut start = None;
    let mut goal = None;
    let mut polys = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().expect("nonempty line");
        let nums: Vec<f64> = parts
            .map(|t| t.parse::<f64>().map_err(|_| err(format!("invalid number '{t}'"))))
            .collect::<Result<_>>()?;
        if nums.iter().any(|v| !v.is_finite()) {
            return Err(err("non-finite number".into()));
        }
        let points = |nums: &[f64]| -> Result<Vec<Point>> {
            if !nums.len().is_multiple_of(dim) {
                return Err(err(format!("expected coordinates in groups of {dim}")));
            }
            Ok(nums.chunks(dim).map(|c| [c[0], c[1]]).collect())
        };
        match key {
            "dim" => match nums.as_slice() {
                [d] if *d == 2.0 || *d == 3.0 => dim = *d as usize,
                _ => return Err(err("dim must be 2 or 3".into())),
            },
            "box" => {
                if nums.len() != 4 {
                    return Err(err("box takes xmin ymin xmax ymax".into()));
                }
                bbox = Some([nums[0], nums[1], nums[2], nums[3]]);
            }
            "start" | "goal" => {
                let p = points(&nums)?;
                if p.len() != 1 {
                    return Err(err(format!("{key} takes one point")));
                }
                if key == "start" {
                    start = Some(p[0]);
                } else {
                    goal = Some(p[0]);
                }
            }
            "poly" => {
                let poly = Polygon::new(points(&nums)?).map_err(|e| err(e.to_string()))?;
                polys.push(poly);
            }
            other => return Err(err(format!("unknown keyword '{other}'"))),
        }
    }
    let missing = |what: &str| Error::Parse { line: 0, message: format!("missing '{what}' line") };
    Environment::new(
        bbox.ok_or_else(|| missing("box"))?,
        start.ok_or_else(|| missing("start"))?,
        goal.ok_or_else(|| missing("goal"))?,
        polys,
    )
}

pub fn read_environment_file(path: impl AsRef<Path>) -> Result<Environment> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.as_ref().display())))?;
    parse_environment(&text)
}

pub fn format_environment(env: &Environment) -> String {
    let [x0, y0, x1, y1] = env.bbox;
    let mut out = format!("box {x0} {y0} {x1} {y1}\nstart {} {}\ngoal {} {}\n", env.start[0], env.start[1], env.goal[0], env.goal[1]);
    for p in &env.obstacles {
        out.push_str("poly");
        for v in &p.vertices {
            out.push_str(&format!(" {} {}", v[0], v[1]));
        }
        out.push('\n');
    }
    out
}

/// Square `size × size` world with start and goal in opposite corners and
/// up to `obstacles` random convex polygons that keep clear of both.
pub fn random_environment(size: f64, obstacles: usize, seed: u64) -> Environment {
    let mut rng = stream(seed, &[0xE4]);
    let start = [size * 0.05, size * 0.05];
    let goal = [size * 0.95, size * 0.95];
    let mut polys: Vec<Polygon> = Vec::new();
    let mut attempts = 0;
    while polys.len() < obstacles && attempts < obstacles * 50 {
        attempts += 1;
        let c = [rng.gen_range(0.1..0.9) * size, rng.gen_range(0.1..0.9) * size];
        let r = rng.gen_range(0.04..0.12) * size;
        let k = rng.gen_range(3..=6);
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let verts: Vec<Point> = (0..k)
            .map(|i| {
                let a = phase + std::f64::consts::TAU * i as f64 / k as f64;
                let rr = r * rng.gen_range(0.7..1.0);
                [c[0] + rr * a.cos(), c[1] + rr * a.sin()]
            })
            .collect();
        let Ok(poly) = Polygon::new(verts) else { continue };
        let clear = |p: Point| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt() > r + size * 0.05;
        if clear(start) && clear(goal) {
            polys.push(poly);
        }
    }
    Environment::new([0.0, 0.0, size, size], start, goal, polys).expect("generated environment is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, s: f64) -> Polygon {
        Polygon::new(vec![[x0, y0], [x0 + s, y0], [x0 + s, y0 + s], [x0, y0 + s]]).unwrap()
    }

    #[test]
    fn collision_examples() {
        let obs = [square(1.0, 1.0, 1.0)];
        assert!(segment_collides([0.0, 1.5], [3.0, 1.5], &obs).unwrap());
        assert!(!segment_collides([0.0, 0.0], [3.0, 0.0], &obs).unwrap());
        // grazes the corner (1, 1)
        assert!(segment_collides([0.0, 2.0], [2.0, 0.0], &obs).unwrap());
        // fully inside
        assert!(segment_collides([1.2, 1.2], [1.8, 1.8], &obs).unwrap());
    }

    #[test]
    fn degenerate_polygon_is_an_error() {
        let bad = Polygon { vertices: vec![[0.0, 0.0], [1.0, 0.0]] };
        assert!(segment_collides([0.0, 0.0], [1.0, 1.0], &[bad]).is_err());
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 1.0]]).is_err());
    }

    #[test]
    fn bow_tie_is_rejected_and_clockwise_is_reoriented() {
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
        let p = Polygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(p.signed_area() > 0.0);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# demo\nbox 0 0 10 10\nstart 1 1\ngoal 9 9\npoly 4 4 6 4 6 6 4 6\n";
        let env = parse_environment(text).unwrap();
        assert_eq!(env.obstacles.len(), 1);
        assert_eq!(parse_environment(&format_environment(&env)).unwrap(), env);
        let three = "dim 3\nbox 0 0 10 10\nstart 1 1 0\ngoal 9 9 0\npoly 4 4 2 6 4 2 6 6 2\n";
        assert_eq!(parse_environment(three).unwrap().obstacles[0].vertices.len(), 3);
        match parse_environment("box 0 0 10 10\nstart 1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_environment("box 0 0 10 10\nstart 5 5\ngoal 9 9\npoly 4 4 6 4 6 6 4 6\n"),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn random_environments_are_valid() {
        for seed in 0..20 {
            let env = random_environment(30.0, 8, seed);
            assert!(env.is_free(env.start) && env.is_free(env.goal));
        }
    }
}
