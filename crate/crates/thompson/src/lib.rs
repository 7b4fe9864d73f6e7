//! File formats, brute-force oracle, seeded sampling and the command-line
//! front end for [`thompson_core`].

pub mod cli;
pub mod format;
#[doc(hidden)]
pub mod oracle;
pub mod random;
pub mod search;

use thompson_core::Error;

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 1,
        Error::Parse(_) | Error::Invalid(_) => 2,
        Error::Domain(_) => 3,
        Error::Internal(_) => 4,
    }
}
