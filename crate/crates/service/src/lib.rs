//! Stateless HTTP+JSON facade over the planeform library.
//!
//! Every handler is a pure function of the request and the form registry
//! built at startup. Error responses always carry an [`ApiError`] body.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use planeform::form::{builtin_forms, BaseLines, FormError, FormPattern, FormSource, MatchMode};
use planeform::octonion::{build_table, paper_orientation};
use planeform::plane::build_field_plane;
use planeform::{parse_poem, scaffold, to_json, validate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub status: u16,
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    fn unknown_form(name: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "unknown_form",
            format!("no form named {name:?}"),
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, json_body(&self)).into_response()
    }
}

fn json_body<T: Serialize>(value: &T) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], to_json(value)).into_response()
}

/// Immutable state shared by all handlers.
#[derive(Debug, Clone)]
pub struct AppState {
    forms: Vec<FormPattern>,
}

impl AppState {
    /// Built-in forms plus any extra forms registered at startup. Later
    /// entries do not replace earlier ones with the same name.
    pub fn new(extra_forms: Vec<FormPattern>) -> Self {
        let mut forms = builtin_forms();
        for f in extra_forms {
            if !forms.iter().any(|g| g.name() == f.name()) {
                forms.push(f);
            }
        }
        AppState { forms }
    }

    fn form(&self, name: &str) -> Result<&FormPattern, ApiError> {
        self.forms
            .iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| ApiError::unknown_form(name))
    }
}

impl Default for AppState {
    fn default() -> Self {
        Self::new(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSummary {
    pub name: String,
    pub point_count: usize,
    pub stanza_shape: Vec<usize>,
    pub stanzas: Vec<Vec<usize>>,
    pub source: FormSource,
}

impl From<&FormPattern> for FormSummary {
    fn from(f: &FormPattern) -> Self {
        FormSummary {
            name: f.name().to_string(),
            point_count: f.point_count(),
            stanza_shape: f.stanza_shape(),
            stanzas: f.stanzas().to_vec(),
            source: f.source().clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ScaffoldRequest {
    pub form: String,
    pub base_lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldResponse {
    pub poem: String,
    /// For each point id, its `(stanza, position)` slots.
    pub classes: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ValidateRequest {
    pub form: String,
    pub poem: String,
    pub mode: String,
    #[serde(default)]
    pub threshold: Option<f64>,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/forms", get(list_forms))
        .route("/api/scaffold", post(scaffold_poem))
        .route("/api/validate", post(validate_poem))
        .route("/api/plane/{q}", get(plane))
        .route("/api/octonion/table", get(octonion_table))
        .fallback(not_found)
        .method_not_allowed_fallback(method_not_allowed)
        .layer(CorsLayer::permissive())
        .with_state(Arc::new(state))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(state)).await
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

async fn list_forms(State(state): State<Arc<AppState>>) -> Response {
    let forms: Vec<FormSummary> = state.forms.iter().map(FormSummary::from).collect();
    json_body(&forms)
}

async fn scaffold_poem(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: ScaffoldRequest = parse_body(&body)?;
    let form = state.form(&req.form)?;
    let base = BaseLines::new(req.base_lines).map_err(form_error)?;
    let poem = scaffold(form, &base).map_err(form_error)?;
    Ok(json_body(&ScaffoldResponse {
        poem: poem.render(),
        classes: form.classes(),
    }))
}

async fn validate_poem(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: ValidateRequest = parse_body(&body)?;
    let mode = match (req.mode.as_str(), req.threshold) {
        ("exact" | "normalized", Some(_)) => {
            return Err(ApiError::bad_request(
                "threshold only applies to fuzzy mode",
            ))
        }
        (mode, threshold) => MatchMode::parse(mode, threshold).map_err(form_error)?,
    };
    let form = state.form(&req.form)?;
    let poem = parse_poem(&req.poem).map_err(form_error)?;
    Ok(json_body(&validate(&poem, form, mode)))
}

async fn plane(Path(q): Path<String>) -> Result<Response, ApiError> {
    let unsupported = || {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "unsupported_order",
            format!("no field plane of order {q:?}; supported orders are 2, 3, 4, 5, 7, 8, 9"),
        )
    };
    let order: i64 = q.parse().map_err(|_| unsupported())?;
    let plane = build_field_plane(order).map_err(|_| unsupported())?;
    Ok(json_body(&plane.to_document()))
}

async fn octonion_table() -> Response {
    let table = build_table(&paper_orientation()).expect("listed orientation is valid");
    json_body(&table.to_document())
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

async fn method_not_allowed() -> ApiError {
    ApiError::new(
        StatusCode::METHOD_NOT_ALLOWED,
        "method_not_allowed",
        "method not allowed for this endpoint",
    )
}

fn form_error(e: FormError) -> ApiError {
    ApiError::bad_request(e.to_string())
}
