//! Complex Gamma, Kummer `M` and parabolic cylinder `D_ν`.

pub(crate) mod ddouble;
mod gamma;
mod kummer;
mod pcf;

pub use gamma::{gamma_complex, rgamma};
pub use kummer::{kummer_m, ASYMPTOTIC_RADIUS};
pub(crate) use pcf::weber_taylor;
pub use pcf::{
    pcf_d, pcf_d_asymptotic, pcf_d_continuation, pcf_d_deriv, pcf_d_detailed, pcf_d_series, PcfArgument, PcfConfig,
    PcfMethod, PcfOrder, PcfValue, DEFAULT_Z_SWITCH,
};
