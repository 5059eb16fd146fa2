#![no_main]
use libfuzzer_sys::fuzz_target;
use lebesgue::borel::{int_to_nat, nat_to_int, nat_to_q, nat_to_q2, pair_decode, pair_encode, q2_to_nat, q_to_nat, topo_basis_r};
use num_bigint::BigUint;

fuzz_target!(|data: &[u8]| {
    // Calkin-Wilf decoding is linear in the bit length; keep inputs short
    if data.len() > 64 {
        return;
    }
    let n = BigUint::from_bytes_le(data);
    let (a, b) = pair_decode(&n);
    assert_eq!(pair_encode(&a, &b), n);
    assert_eq!(int_to_nat(&nat_to_int(&n)), n);
    assert_eq!(q_to_nat(&nat_to_q(&n)), n);
    assert_eq!(q2_to_nat(&nat_to_q2(&n)), n);
    let _ = topo_basis_r(&n);
});
