"""
Mise en forme des résultats des commandes (CSV et JSON).
"""
import csv
import io
import json
from typing import Any, Dict, Iterable, List, Sequence

from distributions.models import is_infinite

INFINITE_TOKEN = 'inf'


def format_number(value: Any) -> str:
    """
    Formate un nombre avec 17 chiffres significatifs.

    Args:
        value: Réel, entier, booléen, marqueur INFINITE ou chaîne

    Returns:
        str: Représentation relisible sans perte par float()
    """
    if is_infinite(value):
        return INFINITE_TOKEN
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value:
            return 'nan'
        if value in (float('inf'), float('-inf')):
            return INFINITE_TOKEN if value > 0 else '-' + INFINITE_TOKEN
        return format(value, '.17g')
    return str(value)


def _json_value(value: Any) -> Any:
    if is_infinite(value):
        return INFINITE_TOKEN
    if isinstance(value, float):
        # repr() de json est exact à l'aller-retour ; Infinity/NaN sont hors norme JSON
        if value != value or value in (float('inf'), float('-inf')):
            return format_number(value)
        return float(value)
    if isinstance(value, dict):
        return {key: _json_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    return value


def render_json(payload: Dict[str, Any]) -> str:
    """
    Sérialise un dictionnaire de résultats en JSON UTF-8 stable.

    Args:
        payload: Résultats de la commande

    Returns:
        str: JSON indenté, clés dans l'ordre d'insertion, terminé par un saut de ligne
    """
    return json.dumps(_json_value(payload), indent=2, ensure_ascii=False) + '\n'


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Sérialise une table en CSV avec des fins de ligne '\\n'.

    Args:
        header: Noms de colonnes
        rows: Lignes de valeurs

    Returns:
        str: Contenu CSV
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def rows_to_records(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[Dict[str, Any]]:
    """Convertit des lignes en dictionnaires pour la sortie JSON."""
    return [dict(zip(header, row)) for row in rows]
