use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use placement_core::Error;
use serde::Serialize;

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<String>,
}

/// An error response: status plus a JSON body `{error, message, field?}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl ApiError {
    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: ErrorBody {
                error: "bad_request",
                message: message.into(),
                field: None,
            },
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            body: ErrorBody {
                error: "config",
                message: message.into(),
                field: None,
            },
        }
    }

    pub fn status(&self) -> StatusCode {
        self.status
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let (status, error, field) = match &e {
            Error::Validation { field, .. } => (StatusCode::BAD_REQUEST, "validation", Some(field.clone())),
            Error::InvalidDateOrder { .. } => (StatusCode::BAD_REQUEST, "validation", Some("birth_date".into())),
            Error::DuplicateCandidate { .. } => (StatusCode::CONFLICT, "duplicate", None),
            Error::NotFound { .. } => (StatusCode::NOT_FOUND, "not_found", None),
            Error::EmptyBatch => (StatusCode::UNPROCESSABLE_ENTITY, "empty_batch", None),
            Error::NoResults(_) => (StatusCode::CONFLICT, "no_results", None),
            Error::CostZeroValue { .. } | Error::NoMatchingRule { .. } | Error::DimensionMismatch { .. } => {
                (StatusCode::UNPROCESSABLE_ENTITY, "selection", None)
            }
            Error::Config(_) => (StatusCode::INTERNAL_SERVER_ERROR, "config", None),
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "internal", None),
        };
        ApiError {
            status,
            body: ErrorBody { error, message, field },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}
