from .documents import (
    CertificateDocument,
    IndexDocument,
    OracleDocument,
    SearchDocument,
    SufficiencyDocument,
    certificate_document,
    game_document,
    index_document,
    oracle_document,
    render_csv,
    render_json,
    scan_columns,
    scan_rows,
    search_document,
    sufficiency_document,
)

__all__ = [
    "CertificateDocument",
    "IndexDocument",
    "OracleDocument",
    "SearchDocument",
    "SufficiencyDocument",
    "certificate_document",
    "game_document",
    "index_document",
    "oracle_document",
    "render_csv",
    "render_json",
    "scan_columns",
    "scan_rows",
    "search_document",
    "sufficiency_document",
]
