use super::laurent::LaurentBox;
use super::tensor::TensorIntegrand;
use super::{MomentError, MomentModel, MomentQuery, K_MAX_QUADRATURE, K_MAX_RESIDUE};
use crate::numerics::make_nested_circles;
use num_complex::Complex64;

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn cpow_int(z: Complex64, n: i32) -> Complex64 {
    if n >= 0 {
        z.powu(n as u32)
    } else {
        z.powu((-n) as u32).inv()
    }
}

/// Joint q-TASEP moment E[prod_j q^{x_{n_j}(t) + n_j}] from step data, by
/// tensor quadrature of the k-fold nested contour integral
///
///   (-1)^k q^{k(k-1)/2} / (2 pi i)^k  oint...oint
///     prod_{A<B} (z_A - z_B)/(z_A - q z_B)
///     prod_j e^{(q-1) t z_j} (1 - z_j)^{-n_j} dz_j / z_j
///
/// (in the inhomogeneous version the factor (1 - z)^{-n_j} becomes
/// prod_{m<=n_j} a_m/(a_m - z) and the contours enclose every a_m).
/// The true value is real; an imaginary residue above 1e-6 is an error.
pub fn qtasep_moment(query: &MomentQuery, nodes: usize) -> Result<Complex64, MomentError> {
    query.validate()?;
    if query.model != MomentModel::QTasep {
        return Err(MomentError::Domain("query is not a q-TASEP moment".into()));
    }
    let k = query.k;
    if k > K_MAX_QUADRATURE {
        return Err(MomentError::OrderTooLarge {
            k,
            max: K_MAX_QUADRATURE,
        });
    }
    let q = query.q;
    let t = query.t;
    // q = 0 degenerates the nesting; the moment is still defined by the
    // residue expansion, so defer to it there
    if q == 0.0 {
        return qtasep_moment_residue(query);
    }
    let specs = make_nested_circles(k, q, c64(1.0), true)?;
    let rules: Vec<_> = specs.iter().map(|s| s.rule(nodes)).collect();
    let integrand = TensorIntegrand::build(
        &rules,
        |j, z| {
            let n_j = query.indices[j];
            let base = ((q - 1.0) * t * z).exp() / z;
            match &query.a {
                None => base * cpow_int(c64(1.0) - z, -(n_j as i32)),
                Some(a) => {
                    let mut prod = base;
                    for am in a.iter().take(n_j as usize) {
                        prod *= am / (am - z);
                    }
                    prod
                }
            }
        },
        |za, zb| (za - zb) / (za - q * zb),
    );
    let prefactor = c64(if k % 2 == 0 { 1.0 } else { -1.0 })
        * c64(q.powi((k * (k - 1) / 2) as i32));
    let value = prefactor * integrand.sum();
    if value.im.abs() > 1e-6 {
        return Err(MomentError::ResidualImag { value_im: value.im });
    }
    Ok(value)
}

/// The same moment by exact finite residue expansion: the nested contours
/// collapse onto the pole at 1 and the chain poles at q, q^2, ..., and each
/// term is an iterated residue evaluated in closed form with truncated
/// Laurent arithmetic. Serves as the independent oracle for the quadrature
/// path. Homogeneous rates only; k <= 4.
pub fn qtasep_moment_residue(query: &MomentQuery) -> Result<Complex64, MomentError> {
    query.validate()?;
    if query.model != MomentModel::QTasep {
        return Err(MomentError::Domain("query is not a q-TASEP moment".into()));
    }
    if query.a.is_some() {
        return Err(MomentError::Domain(
            "residue oracle covers homogeneous rates only".into(),
        ));
    }
    let k = query.k;
    if k > K_MAX_RESIDUE {
        return Err(MomentError::OrderTooLarge {
            k,
            max: K_MAX_RESIDUE,
        });
    }
    let value = residue_sum(query, 2)?;
    // widen the Laurent boxes and require agreement, certifying truncation
    let check = residue_sum(query, 5)?;
    if (value - check).norm() > 1e-10 * (1.0 + value.norm()) {
        return Err(MomentError::Truncation {
            bound: (value - check).norm(),
            target: 1e-10,
        });
    }
    Ok(check)
}

fn residue_sum(query: &MomentQuery, pad: i32) -> Result<Complex64, MomentError> {
    let k = query.k;
    let q = query.q;
    let t = query.t;
    let n: Vec<i32> = query.indices.iter().map(|&x| x as i32).collect();
    let n_max = *n.iter().max().unwrap();
    let lo: Vec<i32> = n.iter().map(|&nj| -(nj + k as i32) - pad).collect();
    let hi: Vec<i32> = vec![n_max + k as i32 + pad; k];
    let powq: Vec<f64> = (0..=k as i32).map(|m| q.powi(m)).collect();

    // every variable either sits at the pole 1 (depth 0) or chains onto a
    // deeper variable through a crossed z_A - q z_B pole (depth m_B + 1);
    // summing over all depth assignments is exhaustive, and assignments that
    // create no actual pole contribute exactly zero
    let mut total = Complex64::new(0.0, 0.0);
    let mut depths = vec![0usize; k];
    loop {
        total += residue_term(&lo, &hi, &n, q, t, &powq, &depths);
        // odometer over depths[j] in 0..=(k - 1 - j)
        let mut j = 0;
        loop {
            if j == k {
                let prefactor = c64(if k % 2 == 0 { 1.0 } else { -1.0 })
                    * c64(q.powi((k * (k - 1) / 2) as i32));
                return Ok(prefactor * total);
            }
            if depths[j] < k - 1 - j {
                depths[j] += 1;
                break;
            }
            depths[j] = 0;
            j += 1;
        }
    }
}

fn residue_term(
    lo: &[i32],
    hi: &[i32],
    n: &[i32],
    q: f64,
    t: f64,
    powq: &[f64],
    depths: &[usize],
) -> Complex64 {
    let k = n.len();
    let mut prod = LaurentBox::constant(lo, hi, c64(1.0));
    for j in 0..k {
        let cj = powq[depths[j]];
        // e^{(q-1) t z_j}
        let mut atom = LaurentBox::exp_single(lo, hi, j, c64((q - 1.0) * t));
        atom.scale(c64(((q - 1.0) * t * cj).exp()));
        prod = prod.mul(&atom);
        // (1 - z_j)^{-n_j}
        if depths[j] == 0 {
            // (1 - 1 - eps)^{-n} = (-1)^n eps^{-n}
            let mut exps = vec![0i32; k];
            exps[j] = -n[j];
            let sign = if n[j] % 2 == 0 { 1.0 } else { -1.0 };
            prod = prod.mul(&LaurentBox::monomial(lo, hi, &exps, c64(sign)));
        } else {
            let base = LaurentBox::inverse_affine(lo, hi, c64(1.0 - cj), &[(j, c64(-1.0))]);
            for _ in 0..n[j] {
                prod = prod.mul(&base);
            }
        }
        // 1/z_j (the origin is outside every contour, so never a residue)
        prod = prod.mul(&LaurentBox::inverse_affine(lo, hi, c64(cj), &[(j, c64(1.0))]));
    }
    for a in 0..k {
        for b in (a + 1)..k {
            let (ca, cb) = (powq[depths[a]], powq[depths[b]]);
            // numerator z_A - z_B
            let c0 = if depths[a] == depths[b] {
                c64(0.0)
            } else {
                c64(ca - cb)
            };
            prod = prod.mul(&LaurentBox::affine(
                lo,
                hi,
                c0,
                &[(a, c64(1.0)), (b, c64(-1.0))],
            ));
            // 1/(z_A - q z_B): coincident exactly when depth_A = depth_B + 1
            let atom = if depths[a] == depths[b] + 1 {
                LaurentBox::inverse_coincident(lo, hi, a, c64(1.0), b, c64(-q))
            } else {
                LaurentBox::inverse_affine(lo, hi, c64(ca - q * cb), &[(a, c64(1.0)), (b, c64(-q))])
            };
            prod = prod.mul(&atom);
        }
    }
    prod.residue()
}
