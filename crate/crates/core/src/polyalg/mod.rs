//! Exact integer, rational and polynomial arithmetic.

pub mod chebyshev;
pub mod modp;
pub mod newton;
pub mod poly;
pub mod primes;
pub mod resultant;
pub mod sturm;

pub use chebyshev::{chebyshev_t, cyclotomic, is_power_of_two, minpoly_cos, minpoly_two_cos};
pub use modp::{factor_mod_p, ModPFactorization, PolyModP};
pub use newton::{newton_polygon, newton_polygon_rat, NewtonPolygon, Segment};
pub use poly::{parse_poly_text, IntPolynomial};
pub use primes::{is_prime, primes_up_to};
pub use resultant::{discriminant, resultant};
pub use sturm::{count_real_roots, isolate_real_roots, RealRoot, RootInterval};
