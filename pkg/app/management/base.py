"""
Classe de base des commandes : fichier de configuration, graine, sortie et codes de retour.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type

from django.core.management.base import BaseCommand, CommandError

from app.exceptions import BadParameter, exit_code_for
from app.forms import RunForm

logger = logging.getLogger(__name__)

EXIT_VIOLATIONS = 1


def read_config_file(path: str) -> Dict[str, str]:
    """
    Lit un fichier de configuration key=value.

    Les lignes vides et les commentaires (#) sont ignorés.

    Raises:
        OSError: Si le fichier est illisible
        BadParameter: Si une ligne n'a pas la forme key=value
    """
    values = {}
    with open(path, encoding='utf-8') as handle:
        for number, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith('#'):
                continue
            key, sep, value = text.partition('=')
            if not sep or not key.strip():
                raise BadParameter(f"{path}:{number} : ligne sans '=' ({text!r})")
            values[key.strip().replace('-', '_')] = value.strip()
    return values


class CertifCommand(BaseCommand):
    """
    Commande avec options communes --config, --seed, --output et --format.

    Les sous-classes déclarent form_class, qui porte les valeurs par défaut,
    ajoutent leurs options dans add_command_arguments (défaut None pour que
    le fichier de configuration s'applique) et produisent le texte de sortie
    dans run().
    """
    form_class: Type[RunForm] = RunForm

    def add_arguments(self, parser):
        parser.add_argument('--config', help="Fichier key=value de paramètres")
        parser.add_argument('--seed', type=int, help="Graine de base (défaut : CERTIF_SEED)")
        parser.add_argument('--output', help="Fichier de sortie (défaut : sortie standard)")
        parser.add_argument('--format', choices=['csv', 'json'], help="Format de sortie")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def get_form_class(self, options: Dict[str, Any], from_file: Dict[str, str]) -> Type[RunForm]:
        return self.form_class

    def collect_parameters(
        self,
        form_class: Type[RunForm],
        options: Dict[str, Any],
        from_file: Dict[str, str]
    ) -> Dict[str, Any]:
        """
        Fusionne défauts du formulaire, fichier de configuration et options.

        Les options de la ligne de commande l'emportent sur le fichier.

        Raises:
            BadParameter: Si le fichier contient une clé inconnue
        """
        known = form_class.known_keys()
        unknown = sorted(set(from_file) - known)
        if unknown:
            raise BadParameter(f"Clés inconnues dans {options['config']} : {', '.join(unknown)}")
        merged = dict(form_class.defaults)
        merged.update(from_file)
        for key in known:
            if options.get(key) is not None:
                merged[key] = options[key]
        return merged

    def run(self, params: Dict[str, Any]) -> str:
        raise NotImplementedError

    def write_output(self, text: str, path: Optional[str]) -> None:
        if path:
            Path(path).write_text(text, encoding='utf-8')
            logger.info(f"Résultats écrits dans {path}")
        else:
            self.stdout.write(text, ending='')

    def handle(self, *args, **options):
        try:
            from_file = read_config_file(options['config']) if options.get('config') else {}
            form_class = self.get_form_class(options, from_file)
            merged = self.collect_parameters(form_class, options, from_file)
            params = form_class(data=merged).parameters()
            text = self.run(params)
            self.write_output(text, merged.get('output'))
        except CommandError:
            raise
        except Exception as exc:
            code = exit_code_for(exc)
            logger.error(f"Échec de la commande {self.__module__.rsplit('.', 1)[-1]} : {exc}")
            raise CommandError(str(exc), returncode=code) from exc
        self.after_output()

    def after_output(self) -> None:
        """Point d'extension exécuté une fois la sortie écrite."""
