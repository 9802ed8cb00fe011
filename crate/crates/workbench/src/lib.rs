//! Session-based HTTP/JSON service for editing a graph move by move.
//!
//! Every response that describes a session carries the full property report
//! and the diameter, so a client never has to compute anything itself.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::RwLock;
use tower_http::cors::CorsLayer;

use spg_core::generators::{
    gen_cube_spg, gen_cyclic_construction, gen_figure1, gen_hirsch_path_clf, gen_spindle_family,
};
use spg_core::strategy::{candidate_moves, violations, ScoredMove, Violation};
use spg_core::{
    diameter, property_report, restriction, DiameterResult, Face, Move, Property, PropertyReport,
    Spg, SpgDocument, SpgError, StrategyTrace,
};

/// One editing session: the starting graph and the moves applied since.
#[derive(Debug, Clone)]
pub struct Session {
    initial: Spg,
    /// `states[i]` is the graph after the first `i` moves.
    states: Vec<Spg>,
    moves: Vec<Move>,
}

impl Session {
    pub fn new(initial: Spg) -> Self {
        Session {
            states: vec![initial.clone()],
            initial,
            moves: Vec::new(),
        }
    }

    pub fn current(&self) -> &Spg {
        self.states
            .last()
            .expect("the initial state is never popped")
    }

    pub fn apply(&mut self, mv: Move) -> Result<(), SpgError> {
        let next = mv.apply(self.current())?;
        self.states.push(next);
        self.moves.push(mv);
        Ok(())
    }

    /// Returns false when there is nothing to undo.
    pub fn undo(&mut self) -> bool {
        if self.moves.pop().is_some() {
            self.states.pop();
            true
        } else {
            false
        }
    }

    pub fn trace(&self) -> StrategyTrace {
        StrategyTrace::from_moves(&self.initial, &Property::MAIN, &self.moves)
            .expect("recorded moves were legal when applied")
    }
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub id: String,
    pub graph: SpgDocument,
    pub report: PropertyReport,
    pub diameter: DiameterResult,
    pub moves: Vec<Move>,
}

fn view(id: &str, session: &Session) -> SessionView {
    let g = session.current();
    SessionView {
        id: id.to_string(),
        graph: SpgDocument::from_spg(g),
        report: property_report(g),
        diameter: diameter(g),
        moves: session.moves.clone(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase", deny_unknown_fields)]
pub enum SessionSource {
    Upload {
        document: SpgDocument,
    },
    Generator {
        name: String,
        #[serde(default)]
        params: GeneratorParams,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub dim: Option<usize>,
}

fn generate(name: &str, p: &GeneratorParams) -> Result<Spg, ApiError> {
    let need = |v: Option<usize>, field: &str| {
        v.ok_or_else(|| ApiError::bad_request(format!("generator {name} needs params.{field}")))
    };
    let g = match name {
        "spindle" => gen_spindle_family(need(p.m, "m")?),
        "cyclic" => gen_cyclic_construction(need(p.n, "n")?, need(p.d, "d")?),
        "cube" => gen_cube_spg(need(p.dim, "dim")?),
        "hirsch-path" => gen_hirsch_path_clf(need(p.n, "n")?, need(p.d, "d")?).map(|c| c.to_spg()),
        "figure1" => Ok(gen_figure1()),
        other => {
            return Err(ApiError::bad_request(format!(
                "unknown generator {other:?}"
            )))
        }
    };
    g.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.name(), e.to_string()))
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    name: String,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, name: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            name: name.to_string(),
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "BadRequest", message)
    }

    fn unknown_session(id: &str) -> Self {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "UnknownSession",
            format!("no session {id:?}"),
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = Json(json!({ "error": self.name, "message": self.message }));
        (self.status, body).into_response()
    }
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(e.to_string()))
}

type Shared = Arc<RwLock<Session>>;

/// In-memory session store. Each session has its own lock, so writes to one
/// session never block reads of another.
#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Shared>>,
    next_id: AtomicU64,
}

impl AppState {
    async fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.sessions
            .read()
            .await
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_session(id))
    }
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let source: SessionSource = parse_body(&body)?;
    let g = match source {
        SessionSource::Upload { document } => document
            .to_spg()
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.name(), e.to_string()))?,
        SessionSource::Generator { name, params } => generate(&name, &params)?,
    };
    let id = format!("s{}", state.next_id.fetch_add(1, Ordering::Relaxed) + 1);
    let session = Session::new(g);
    let out = view(&id, &session);
    state
        .sessions
        .write()
        .await
        .insert(id, Arc::new(RwLock::new(session)));
    Ok((StatusCode::CREATED, Json(out)))
}

async fn get_session(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    let session = state.get(&id).await?;
    let session = session.read().await;
    Ok(Json(view(&id, &session)))
}

async fn apply_move(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<SessionView>, ApiError> {
    let session = state.get(&id).await?;
    let mv: Move = parse_body(&body)?;
    let mut session = session.write().await;
    session
        .apply(mv)
        .map_err(|e| ApiError::new(StatusCode::CONFLICT, e.name(), e.to_string()))?;
    Ok(Json(view(&id, &session)))
}

async fn undo(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    let session = state.get(&id).await?;
    let mut session = session.write().await;
    if !session.undo() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "NothingToUndo",
            "the session has no moves",
        ));
    }
    Ok(Json(view(&id, &session)))
}

#[derive(Debug, Deserialize)]
struct FaceQuery {
    #[serde(default)]
    face: String,
}

fn parse_symbols(list: &str) -> Result<Vec<u32>, ApiError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| ApiError::bad_request(format!("bad symbol {s:?}")))
        })
        .collect()
}

async fn restrict(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<FaceQuery>,
) -> Result<Json<Value>, ApiError> {
    let session = state.get(&id).await?;
    let session = session.read().await;
    let face = Face::new(parse_symbols(&q.face)?);
    let view = restriction(session.current(), &face)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.name(), e.to_string()))?;
    Ok(Json(
        serde_json::to_value(view.summary()).expect("summary serializes"),
    ))
}

#[derive(Debug, Deserialize)]
struct TargetsQuery {
    targets: Option<String>,
}

#[derive(Debug, Serialize)]
struct Suggestion {
    #[serde(flatten)]
    violation: Violation,
    moves: Vec<ScoredMove>,
}

async fn suggestions(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<TargetsQuery>,
) -> Result<Json<Vec<Suggestion>>, ApiError> {
    let targets = match q.targets.as_deref() {
        None | Some("") => Property::MAIN.to_vec(),
        Some(list) => Property::parse_list(list).map_err(ApiError::bad_request)?,
    };
    let session = state.get(&id).await?;
    let session = session.read().await;
    let g = session.current();
    let out = violations(g, &targets)
        .into_iter()
        .map(|violation| Suggestion {
            moves: candidate_moves(g, &violation),
            violation,
        })
        .collect();
    Ok(Json(out))
}

async fn trace(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<StrategyTrace>, ApiError> {
    let session = state.get(&id).await?;
    let session = session.read().await;
    Ok(Json(session.trace()))
}

/// The full API with permissive CORS for the browser client.
pub fn router() -> Router {
    router_with_state(Arc::new(AppState::default()))
}

pub fn router_with_state(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(apply_move))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/restrict", get(restrict))
        .route("/sessions/{id}/suggestions", get(suggestions))
        .route("/sessions/{id}/trace", get(trace))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
