//! HTTP layer over [`Session`]. The default session answers at the root
//! paths; further sessions are created with `POST /sessions` and answer
//! under `/sessions/{id}`. Commands of one session run one at a time, and
//! sessions never wait on each other.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use polydraw_core::scene::{Command, Session, SessionConfig, Source};
use polydraw_core::{Error, ErrorKind};
use serde_json::{json, Value};
use tokio::sync::{Mutex, RwLock};

pub const DEFAULT_SESSION: &str = "default";

pub struct AppState {
    source: Source,
    config: SessionConfig,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: Mutex<u64>,
}

impl AppState {
    /// State with a default session replaying `commands`.
    pub fn new(source: Source, config: SessionConfig, commands: &[Command]) -> polydraw_core::Result<Arc<Self>> {
        let session = Session::replay(source.clone(), config.clone(), commands)?;
        let mut sessions = HashMap::new();
        sessions.insert(DEFAULT_SESSION.to_string(), Arc::new(Mutex::new(session)));
        Ok(Arc::new(AppState { source, config, sessions: RwLock::new(sessions), next_id: Mutex::new(1) }))
    }
}

pub struct ApiError {
    status: StatusCode,
    code: String,
    kind: &'static str,
    message: String,
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match (&e, e.kind()) {
            (Error::AmbiguousFacet { .. }, _) => StatusCode::CONFLICT,
            (_, ErrorKind::Validation) => StatusCode::UNPROCESSABLE_ENTITY,
            (_, ErrorKind::Computation) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let kind = match e.kind() {
            ErrorKind::Validation => "validation",
            ErrorKind::Computation => "computation",
        };
        ApiError { status, code: e.code().to_string(), kind, message: e.to_string() }
    }
}

impl ApiError {
    fn bad_request(message: String) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, code: "malformed".into(), kind: "validation", message }
    }

    fn not_found(id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: "unknown_session".into(),
            kind: "validation",
            message: format!("no session {id:?}"),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code, "kind": self.kind, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

async fn session(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    state.sessions.read().await.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
}

async fn get_scene(state: &AppState, id: &str) -> ApiResult {
    let s = session(state, id).await?;
    let guard = s.lock().await;
    Ok(Json(serde_json::to_value(guard.response()?).expect("response serializes")))
}

async fn get_log(state: &AppState, id: &str) -> ApiResult {
    let s = session(state, id).await?;
    let guard = s.lock().await;
    Ok(Json(serde_json::to_value(guard.log()).expect("log serializes")))
}

/// Parses `body` as the fields of `command` and applies it.
async fn command(state: &AppState, id: &str, command: &str, body: &[u8]) -> ApiResult {
    let mut v: Value = if body.iter().all(u8::is_ascii_whitespace) {
        json!({})
    } else {
        serde_json::from_slice(body).map_err(|e| ApiError::bad_request(e.to_string()))?
    };
    let obj = v.as_object_mut().ok_or_else(|| ApiError::bad_request("body must be a JSON object".into()))?;
    obj.insert("command".into(), command.into());
    let cmd: Command = serde_json::from_value(v).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let s = session(state, id).await?;
    let mut guard = s.lock_owned().await;
    let response = tokio::task::spawn_blocking(move || guard.apply(cmd))
        .await
        .map_err(|e| ApiError::from(Error::Malformed(format!("command panicked: {e}"))))??;
    Ok(Json(serde_json::to_value(response).expect("response serializes")))
}

/// Creates a session, optionally replaying `{"commands": [...]}`.
async fn create_session(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let commands: Vec<Command> = if body.iter().all(u8::is_ascii_whitespace) {
        Vec::new()
    } else {
        #[derive(serde::Deserialize)]
        struct Body {
            #[serde(default)]
            commands: Vec<Command>,
        }
        serde_json::from_slice::<Body>(&body).map_err(|e| ApiError::bad_request(e.to_string()))?.commands
    };
    let (source, config) = (state.source.clone(), state.config.clone());
    let session = tokio::task::spawn_blocking(move || Session::replay(source, config, &commands))
        .await
        .map_err(|e| ApiError::from(Error::Malformed(format!("replay panicked: {e}"))))??;
    let response = session.response()?;
    let id = {
        let mut n = state.next_id.lock().await;
        let id = format!("s{}", *n);
        *n += 1;
        id
    };
    state.sessions.write().await.insert(id.clone(), Arc::new(Mutex::new(session)));
    Ok(Json(json!({ "id": id, "response": response })))
}

macro_rules! routes {
    ($($path:literal => $cmd:literal),* $(,)?) => {
        fn command_routes(root: Router<Arc<AppState>>, nested: Router<Arc<AppState>>) -> (Router<Arc<AppState>>, Router<Arc<AppState>>) {
            let mut root = root;
            let mut nested = nested;
            $(
                root = root.route($path, post(|State(s): State<Arc<AppState>>, body: Bytes| async move {
                    command(&s, DEFAULT_SESSION, $cmd, &body).await
                }));
                nested = nested.route($path, post(|State(s): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes| async move {
                    command(&s, &id, $cmd, &body).await
                }));
            )*
            (root, nested)
        }
    };
}

routes! {
    "/schlegel/select_facet" => "select_facet",
    "/schlegel/zoom" => "zoom",
    "/schlegel/drag" => "drag",
    "/spring/params" => "spring_params",
    "/spring/step" => "spring_step",
}

pub fn router(state: Arc<AppState>) -> Router {
    let root = Router::new()
        .route("/scene", get(|State(s): State<Arc<AppState>>| async move { get_scene(&s, DEFAULT_SESSION).await }))
        .route("/log", get(|State(s): State<Arc<AppState>>| async move { get_log(&s, DEFAULT_SESSION).await }))
        .route("/sessions", post(create_session));
    let nested = Router::new()
        .route(
            "/scene",
            get(|State(s): State<Arc<AppState>>, Path(id): Path<String>| async move { get_scene(&s, &id).await }),
        )
        .route("/log", get(|State(s): State<Arc<AppState>>, Path(id): Path<String>| async move { get_log(&s, &id).await }));
    let (root, nested) = command_routes(root, nested);
    root.nest("/sessions/{id}", nested).with_state(state)
}

pub async fn serve(state: Arc<AppState>, listen: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(listen).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
