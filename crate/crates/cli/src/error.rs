use gma_core::kernel::KernelError;
use gma_core::pde::grid_io::GridIoError;
use gma_core::pde::PdeError;
use gma_core::psh::PshError;
use gma_core::toric::ToricError;

/// Failures, split by exit code: 2 for bad input, 1 for computations that
/// did not succeed.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Compute(m) => m,
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::State(_) => CliError::Compute(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<PdeError> for CliError {
    fn from(e: PdeError) -> Self {
        match e {
            PdeError::Data(_) => CliError::Validation(e.to_string()),
            PdeError::Kernel(k) => k.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<PshError> for CliError {
    fn from(e: PshError) -> Self {
        match e {
            PshError::State(_) => CliError::Compute(e.to_string()),
            PshError::Kernel(k) => k.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<GridIoError> for CliError {
    fn from(e: GridIoError) -> Self {
        CliError::Validation(e.to_string())
    }
}
