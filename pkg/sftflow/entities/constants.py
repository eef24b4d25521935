"""Constants and environment variable names."""

LOG_LEVEL_ENV = "SFTFLOW_LOG_LEVEL"
WORKER_ENV = "SFTFLOW_WORKER"
SEARCH_LIMIT_ENV = "SFTFLOW_SEARCH_LIMIT"
K_CLASS_VARIANT_ENV = "SFTFLOW_K_CLASS_VARIANT"

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_SEARCH_LIMIT = 10**8

SERVICE_NAME = "sftflow"
