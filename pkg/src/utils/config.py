import os
from pathlib import Path
from dotenv import load_dotenv

# .envファイルを読み込む
env_path = Path(os.getenv("SUPERLLT_ENV_FILE", ".env"))
if not env_path.exists():
    # リポジトリ直下から実行されていない場合など、パッケージ基準の場所を探す
    env_path = Path(__file__).resolve().parents[2] / ".env"
load_dotenv(env_path)

# R型割り当てフィクスチャの既定位置（src/rmatrix/r_types.json）
DEFAULT_RTYPES_FIXTURE_PATH = Path(__file__).resolve().parents[1] / "rmatrix" / "r_types.json"


def get_database_url() -> str:
    # DATABASE_URLが設定されている場合はそれを使用
    database_url = os.getenv("DATABASE_URL")
    if database_url:
        return database_url

    # 既定はカレントディレクトリのSQLiteファイル
    # PostgreSQLを使う場合は.envでDATABASE_URLを上書きする
    return "sqlite:///./superllt.db"


def get_database_url_sync() -> str:
    return get_database_url()


def get_rtypes_fixture_path() -> Path:
    override = os.getenv("SUPERLLT_RTYPES_FIXTURE")
    if override:
        return Path(override)
    return DEFAULT_RTYPES_FIXTURE_PATH


def get_log_level() -> str:
    return os.getenv("LOG_LEVEL", "WARNING").upper()


def get_budget_config() -> dict:
    # 検証スイートの上限値（CLIの--budget-*で上書き可能）
    return {
        "max_states": int(os.getenv("SUPERLLT_BUDGET_STATES", "2000000")),
        "max_seconds": float(os.getenv("SUPERLLT_BUDGET_SECONDS", "600")),
    }
