from pathlib import Path
from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

def _repo_root():
    here = Path(__file__).resolve()
    return here.parents[3] if len(here.parents) >= 4 else here.parent

class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HEDGERULE_")

    prelude_dir: Path = Path('assets/prelude')
    programs_dir: Path = Path('assets/programs')
    load_prelude: bool = True
    strict: bool = True
    trace: bool = False
    depth_limit: int | None = None
    answer_mode: Literal['first', 'all', 'interactive'] = 'interactive'
    max_answers: int | None = None
    traversal: Literal['outermost', 'innermost'] = 'outermost'
    debug_checks: bool = False

    @classmethod
    def from_file(cls,
                  primary: str | Path = "settings.toml",
                  override: str | Path | None = "settings.local.toml") -> "Settings":
        import tomllib
        repo = _repo_root()

        def load(path: Path) -> dict:
            path = Path(path)
            if not path.is_absolute():
                path = repo / path
            return tomllib.loads(path.read_text(encoding="utf-8")) if path.exists() else {}

        base = load(primary)
        overrider = load(override) if override is not None else {}

        return cls(**{**base, **overrider})

    @field_validator("prelude_dir", "programs_dir", mode="before")
    @classmethod
    def _normalize_dir(cls, v):
        path = Path(v).expanduser()
        if path.is_absolute():
            return path
        return (_repo_root() / path).resolve()

    @field_validator('depth_limit', 'max_answers')
    @classmethod
    def _positive(cls, v: int | None) -> int | None:
        if v is not None and v < 1:
            raise ValueError('must be a positive integer when set')
        return v

    def prelude_files(self) -> list[Path]:
        """ Prelude programs, consulted in name order before user files """
        if not self.load_prelude or not self.prelude_dir.exists():
            return []
        return sorted(self.prelude_dir.glob('*.rholog'))
