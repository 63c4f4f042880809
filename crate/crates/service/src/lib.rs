//! JSON-over-HTTP API for the candidate registry and selection engine.
//!
//! | Method | Path                          | Purpose                                  |
//! |--------|-------------------------------|------------------------------------------|
//! | GET    | `/candidates`                 | list, filter by `country`, `placement`, `position` |
//! | POST   | `/candidates`                 | create, 201 with stored entity           |
//! | GET    | `/candidates/{id}`            | fetch one                                |
//! | PUT    | `/candidates/{id}`            | replace                                  |
//! | DELETE | `/candidates/{id}`            | delete, 200 with removed entity          |
//! | POST   | `/selections`                 | create, execute and store a batch        |
//! | GET    | `/selections/{id}`            | stored report, `?format=json|csv|text`   |
//! | POST   | `/selections/whatif`          | rank with weight overrides, not stored   |
//! | GET    | `/criteria`                   | active criteria with resolved weights    |
//!
//! Errors map to 400 (validation, bad override), 404, 409 (duplicate), 422
//! (empty batch) and 500 (configuration).

mod error;
pub mod whatif;

use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use placement_core::registry::ScopeFilter;
use placement_core::{
    AttributeProfile, CandidateRecord, CriterionSpec, Registry, ReportFormat, Scope, SelectionReport, StoredCandidate,
};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use error::ApiError;
pub use whatif::{WeightOverride, WhatIfRequest};

pub const DEFAULT_PORT: u16 = 8080;

/// Shared state: the registry behind a single-writer lock and the criteria
/// loaded at startup (or the reason they failed to load).
pub struct AppState {
    registry: RwLock<Registry>,
    criteria: Result<Vec<CriterionSpec>, String>,
}

impl AppState {
    pub fn new(registry: Registry, criteria: Result<Vec<CriterionSpec>, String>) -> Arc<Self> {
        Arc::new(AppState {
            registry: RwLock::new(registry),
            criteria,
        })
    }

    fn criteria(&self) -> Result<&[CriterionSpec], ApiError> {
        self.criteria.as_deref().map_err(|e| ApiError::config(e.clone()))
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Registry> {
        self.registry.read().unwrap_or_else(|p| p.into_inner())
    }

    fn write(&self) -> std::sync::RwLockWriteGuard<'_, Registry> {
        self.registry.write().unwrap_or_else(|p| p.into_inner())
    }
}

/// Body of POST and PUT `/candidates`: a candidate record plus its profile.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateInput {
    #[serde(flatten)]
    pub record: CandidateRecord,
    pub profile: AttributeProfile,
}

#[derive(Debug, Default, Deserialize)]
struct FormatQuery {
    format: Option<String>,
}

type ApiResult<T> = Result<T, ApiError>;

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    payload.map(|Json(v)| v).map_err(|e| ApiError::bad_request(e.body_text()))
}

pub fn router(state: Arc<AppState>, cors_origin: Option<&str>) -> Router {
    let origin = match cors_origin {
        Some(o) if o != "*" => HeaderValue::from_str(o).map(AllowOrigin::exact).unwrap_or_else(|_| AllowOrigin::any()),
        _ => AllowOrigin::any(),
    };
    let cors = CorsLayer::new().allow_origin(origin).allow_methods(Any).allow_headers(Any);
    Router::new()
        .route("/candidates", get(list_candidates).post(create_candidate))
        .route(
            "/candidates/{id}",
            get(get_candidate).put(update_candidate).delete(delete_candidate),
        )
        .route("/selections", post(create_selection))
        .route("/selections/whatif", post(whatif_selection))
        .route("/selections/{id}", get(get_selection))
        .route("/criteria", get(get_criteria))
        .route("/health", get(|| async { "ok" }))
        .layer(cors)
        .with_state(state)
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, state: Arc<AppState>, cors_origin: Option<&str>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state, cors_origin)).await
}

async fn list_candidates(
    State(state): State<Arc<AppState>>,
    Query(filter): Query<ScopeFilter>,
) -> Json<Vec<StoredCandidate>> {
    Json(state.read().list(&filter).into_iter().cloned().collect())
}

async fn get_candidate(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> ApiResult<Json<StoredCandidate>> {
    Ok(Json(state.read().get(id)?.clone()))
}

async fn create_candidate(
    State(state): State<Arc<AppState>>,
    payload: Result<Json<CandidateInput>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<StoredCandidate>)> {
    let input = body(payload)?;
    let mut reg = state.write();
    let id = reg.add(input.record, input.profile)?;
    Ok((StatusCode::CREATED, Json(reg.get(id)?.clone())))
}

async fn update_candidate(
    State(state): State<Arc<AppState>>,
    Path(id): Path<u64>,
    payload: Result<Json<CandidateInput>, JsonRejection>,
) -> ApiResult<Json<StoredCandidate>> {
    let input = body(payload)?;
    let mut reg = state.write();
    reg.update(id, input.record, input.profile)?;
    Ok(Json(reg.get(id)?.clone()))
}

async fn delete_candidate(
    State(state): State<Arc<AppState>>,
    Path(id): Path<u64>,
) -> ApiResult<Json<StoredCandidate>> {
    Ok(Json(state.write().delete(id)?))
}

async fn create_selection(
    State(state): State<Arc<AppState>>,
    payload: Result<Json<Scope>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SelectionReport>)> {
    let scope = body(payload)?;
    let criteria = state.criteria()?;
    let reg = state.write();
    let batch = reg.create_batch(&scope, criteria)?;
    let done = reg.execute_batch(&batch)?;
    Ok((StatusCode::CREATED, Json(SelectionReport::from_batch(&done)?)))
}

async fn get_selection(
    State(state): State<Arc<AppState>>,
    Path(id): Path<u64>,
    Query(q): Query<FormatQuery>,
) -> ApiResult<Response> {
    let format: ReportFormat = q
        .format
        .as_deref()
        .unwrap_or("json")
        .parse()
        .map_err(ApiError::bad_request)?;
    let batch = state.read().load_batch(id)?;
    let bytes = placement_core::render_report(&batch, format)?;
    let content_type = match format {
        ReportFormat::Json => "application/json",
        ReportFormat::Csv => "text/csv; charset=utf-8",
        ReportFormat::Text => "text/plain; charset=utf-8",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], bytes).into_response())
}

async fn whatif_selection(
    State(state): State<Arc<AppState>>,
    payload: Result<Json<WhatIfRequest>, JsonRejection>,
) -> ApiResult<Json<SelectionReport>> {
    let req = body(payload)?;
    let criteria = req.apply(state.criteria()?)?;
    let batch = state.read().draft_batch(&req.scope, &criteria)?.execute()?;
    Ok(Json(SelectionReport::from_batch(&batch)?))
}

async fn get_criteria(State(state): State<Arc<AppState>>) -> ApiResult<Json<Vec<CriterionSpec>>> {
    Ok(Json(state.criteria()?.to_vec()))
}
