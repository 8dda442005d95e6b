//! Planar geometry over exact rationals: points, labeled point sets, file
//! formats, and seeded configuration generators.

mod generate;
mod point;

pub use generate::{
    circle_point, circle_points, composite, lattice, line_points, random_integer_points,
    random_rat, random_rational_points, rng_from_seed, CircleParams, Composite, Forbid,
    LineSpacing,
};
pub use point::{
    read_pointset_auto, read_pointset_csv, read_pointset_json, write_pointset_csv,
    write_pointset_json, ExactPoint, PointSet,
};
