from contextlib import contextmanager
from functools import lru_cache
from typing import Generator, Optional

from sqlalchemy import create_engine, event
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, sessionmaker

from src.database.models import Base
from src.utils.config import get_database_url


@lru_cache(maxsize=None)
def get_engine(url: Optional[str] = None) -> Engine:
    # --record を指定したときだけ接続する
    url = url or get_database_url()
    engine = create_engine(
        url,
        pool_pre_ping=True,
        echo=False,  # SQLクエリをログ出力する場合はTrueに変更
    )
    if engine.dialect.name == "sqlite":
        # SQLiteは外部キー制約が既定で無効
        @event.listens_for(engine, "connect")
        def _enable_foreign_keys(dbapi_conn, connection_record):
            cursor = dbapi_conn.cursor()
            cursor.execute("PRAGMA foreign_keys=ON")
            cursor.close()

    return engine


def get_session_factory(url: Optional[str] = None) -> sessionmaker:
    return sessionmaker(
        autocommit=False,
        autoflush=False,
        bind=get_engine(url),
    )


def get_session(url: Optional[str] = None) -> Generator[Session, None, None]:
    session = get_session_factory(url)()
    try:
        yield session
        session.commit()
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


@contextmanager
def get_db(url: Optional[str] = None) -> Generator[Session, None, None]:
    yield from get_session(url)


def init_db(url: Optional[str] = None) -> None:
    # alembicを使わない場合（テスト、ローカルのSQLite）
    Base.metadata.create_all(bind=get_engine(url))
