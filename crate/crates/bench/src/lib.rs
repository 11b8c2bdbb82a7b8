//! Inputs shared by the kernel benchmarks in `benches/`.

use quadweb_core::exactnum::{random_prime, PrimeField};
use quadweb_core::polymatrix::PolyMatrix;
use quadweb_core::webquadrics::fixtures::RANK_FIVE_WEB;
use quadweb_core::webquadrics::{validate_web, DerivedMatrices, Web};

/// The rank-five fixture over a fixed 62-bit prime, with its derived matrices.
pub fn fixture() -> (Web<PrimeField>, DerivedMatrices<PrimeField>) {
    let f = PrimeField::new(random_prime(62, 7).expect("62-bit prime")).expect("prime");
    let web = validate_web(&f, &RANK_FIVE_WEB).expect("fixture is a valid web");
    let d = DerivedMatrices::new(&web);
    (web, d)
}

/// 𝔮(y) as an 8×8 matrix of linear forms in y0..y3.
pub fn web_matrix(web: &Web<PrimeField>, d: &DerivedMatrices<PrimeField>) -> PolyMatrix<PrimeField> {
    PolyMatrix::linear_combination(&d.web_ring, web.matrices(), &[0, 1, 2, 3]).expect("four 8×8 matrices")
}
