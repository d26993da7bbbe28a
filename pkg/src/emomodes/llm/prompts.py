"""The 19-question conversational annotation protocol (French).

Each sentence is annotated through one conversation: a system message
followed by 19 yes/no questions, one per label, in the fixed protocol
order (presence, the 12 categories, the 2 types, the 4 modes). Two
prompt variants exist:

* ``positives_only`` -- the sentence triple is given once in the system
  message; each question carries the label definition with positive
  examples only (the presence question keeps its counter-examples in
  both variants);
* ``with_counterexamples`` -- every question carries positive and
  negative examples wrapped in <annotate> tags, and re-states the
  sentence triple in an "Annotation" line the model must complete.

The French wording below is data, reproduced verbatim (including its
small typographical inconsistencies); the renderer only assembles it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..corpus import ContextTriple
from ..errors import MissingSpec

POSITIVES_ONLY = "positives_only"
WITH_COUNTEREXAMPLES = "with_counterexamples"
VARIANTS = (POSITIVES_ONLY, WITH_COUNTEREXAMPLES)

# Protocol question order: presence, categories, types, modes.
QUESTION_ORDER: tuple[str, ...] = (
    "emotional",
    "anger",
    "disgust",
    "joy",
    "fear",
    "surprise",
    "sadness",
    "admiration",
    "guilt",
    "embarrassment",
    "pride",
    "jealousy",
    "other",
    "basic",
    "complex",
    "labeled",
    "behavioral",
    "displayed",
    "suggested",
)


@dataclass(frozen=True)
class AnnotatedExample:
    """One <annotate>-wrapped example with its verbatim answer suffix."""

    text: str
    answer: str  # e.g. "oui.", "non", "oui (car ...)."

    @property
    def is_positive(self) -> bool:
        return self.answer.startswith("oui")


@dataclass(frozen=True)
class LabelPromptSpec:
    """Definition, question, and examples for one label."""

    label: str
    order: int
    question: str
    definition: str
    # C.3-style wording when it differs from the plain definition.
    definition_counterexamples: str | None = None
    plain_example_intro: str = "Par exemple :"
    plain_examples: tuple[str, ...] = ()
    annotated_examples: tuple[AnnotatedExample, ...] = field(default_factory=tuple)

    @property
    def positive_examples(self) -> tuple[str, ...]:
        return tuple(e.text for e in self.annotated_examples if e.is_positive)

    @property
    def negative_examples(self) -> tuple[str, ...]:
        return tuple(e.text for e in self.annotated_examples if not e.is_positive)


SYSTEM_POSITIVES_ONLY = (
    "Tu joues le rôle d'un expert linguiste qui annote des phrases en "
    "t'intéressant à leur dimension émotionnelle.\n"
    "\n"
    "L'annotation porte au niveau de la phrase et prend la forme de questions "
    "successives. Pour comprendre le contexte, la phrase à annoter est donnée "
    "avec sa phrase précédente et sa phrase suivante, mais la réponse à chaque "
    "question doit uniquement porter sur la seule phrase à annoter, et non sur "
    "la phrase précédente ou suivante.\n"
    "\n"
    "- Phrase précédente: {previous}\n"
    "- Phrase à annoter: {target}\n"
    "- Phrase suivante: {next}"
)

SYSTEM_WITH_COUNTEREXAMPLES = (
    "Tu joues le rôle d'un expert linguiste qui annote des phrases d'après "
    "leurs dimensions émotionnelle.\n"
    "\n"
    "Les différentes annotations sont toute binaires (absence ou présence "
    "d'une propriété). Elles vont porter sur la nature émotionnelle ou non des "
    "phrases et, si oui, le mode d'expression de la ou des émotions présentes "
    "(désignée, comportementale, montrée ou suggérée), la ou les catégories "
    "émotionnelles (joie, peur, colère, tristesse, etc.) et le ou les types "
    "d'émotion (\"de base\" ou \"complexe\"). Chaque propriété est décrite par "
    "une définition et des exemples.\n"
    "\n"
    "L'annotation La phrase à annoter est entourée des balises "
    "<annotate>...</annotate>."
)

ANNOTATION_LINE = "- {previous} <annotate>{target}</annotate> {next}  -> "

PROMPT_SPECS: tuple[LabelPromptSpec, ...] = (
    LabelPromptSpec(
        label="emotional",
        order=0,
        definition=(
            "une phrase est dite \"émotionnelle\" si elle exprime explicitement "
            "ou implicitement une émotion, qu'elle soit exprimée par le "
            "narrateur ou un personnage."
        ),
        question="La phrase à annoter est-elle **émotionnelle** ?",
        plain_example_intro="Par exemple:",
        plain_examples=(
            "émotionnelle: \"Cette information a beaucoup énervé Marie.\"",
            "émotionnelle: \"Andrée a sautillé partout en chantant.\"",
            "émotionnelle: \"Oh, non... C'est vraiment dommage !\"",
            "émotionnelle: \"Ces deux amis se retrouvent après une longue séparation.\"",
            "non émotionnelle: \"Avant d'arriver devant une salle de classe, les "
            "enseignants, eux aussi, sont sur les bancs de l'école.\"",
            "non émotionnelle: \"De 2007 à 2012, il a été le Premier ministre de "
            "l'ancien président Nicolas Sarkozy.\"",
            "non émotionnelle: \"Récemment, une nouvelle autorisation a été "
            "délivrée pour un deuxième test dans le courant de l'année 2019.\"",
            "non émotionnelle: \"Avant de sortir, Billy prépare un dîner orange : "
            "une soupe de potiron, des cuisses de canard à l'orange avec une purée "
            "de carottes et une tarte à la citrouille.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Avant de sortir, Billy prépare un dîner orange : une soupe de "
                "potiron, des cuisses de canard à l'orange avec une purée de "
                "carottes et une tarte à la citrouille.",
                "non",
            ),
            AnnotatedExample("Cette information a beaucoup énervé Marie.", "oui"),
            AnnotatedExample("Andrée a sautillé partout en chantant.", "oui"),
            AnnotatedExample(
                "Récemment, une nouvelle autorisation a été délivrée pour un "
                "deuxième test dans le courant de l'année 2019.",
                "non",
            ),
            AnnotatedExample("Oh, non... C'est vraiment dommage !", "oui"),
            AnnotatedExample(
                "De 2007 à 2012, il a été le Premier ministre de l'ancien "
                "président Nicolas Sarkozy.",
                "non",
            ),
            AnnotatedExample(
                "Ces deux amis se retrouvent après une longue séparation.", "oui"
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
        ),
    ),
    LabelPromptSpec(
        label="anger",
        order=1,
        definition=(
            "La catégorie émotionnelle \"colère\" recouvre les émotions "
            "suivantes: agacement, colère, contestation, désaccord (si émotion "
            "suggérée), désapprobation, énervement, fureur/rage, indignation, "
            "insatisfaction, irritation, mécontentement, réprobation et révolte."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **colère** est présente ?"
        ),
        plain_examples=(
            "\"C'est notamment pour cette raison que des \"gilets jaunes\", les "
            "personnes qui manifestent et bloquent des routes dans le pays depuis "
            "plusieurs semaines, sont en colère.\"",
            "\"- Ton commentaire est déplacé, jeune homme ! a-t-elle dit d'un air "
            "pincé.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "De 2007 à 2012, il a été le Premier ministre de l'ancien "
                "président Nicolas Sarkozy.",
                "non",
            ),
            AnnotatedExample(
                "C'est notamment pour cette raison que des \"gilets jaunes\", les "
                "personnes qui manifestent et bloquent des routes dans le pays "
                "depuis plusieurs semaines, sont en colère.",
                "oui.",
            ),
            AnnotatedExample("Tous, étonnés, se taisent.", "non."),
            AnnotatedExample(
                "- Ton commentaire est déplacé, jeune homme ! a-t-elle dit d'un "
                "air pincé.",
                "oui.",
            ),
            AnnotatedExample(
                "Après cette humiliante défaite, Napoléon abdique une nouvelle "
                "fois, ce qui marque définitivement la fin de l'Empire et de sa "
                "période de retour appelée \"les Cent jours\".",
                "non.",
            ),
        ),
    ),
    LabelPromptSpec(
        label="disgust",
        order=2,
        definition=(
            "La catégorie émotionnelle \"dégoût\" recouvre les émotions "
            "suivantes: dégoût, lassitude et répulsion."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **dégoût** est présente ?"
        ),
        plain_examples=(
            "\"Beurk !\"",
            "\"Ça peut paraître dégoûtant, mais on peut manger des insectes.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Ça peut paraître dégoûtant, mais on peut manger des insectes.",
                "oui.",
            ),
            AnnotatedExample("Beurk !", "oui."),
            AnnotatedExample(
                "Finalement, ils ont été pris en charge... par les agriculteurs "
                "locaux, dans un camion benne !",
                "non.",
            ),
            AnnotatedExample(
                "Le Front national, qui est d'extrême droite, faisait peur, à "
                "cause des idées qu'il défendait.",
                "non.",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
        ),
    ),
    LabelPromptSpec(
        label="joy",
        order=3,
        definition=(
            "La catégorie émotionnelle \"joie\" recouvre les émotions suivantes: "
            "amusement, enthousiasme, exaltation, joie et plaisir."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **joie** est présente ?"
        ),
        plain_examples=(
            "\"Pour fêter ses buts, il lui arrive souvent de danser.\"",
            "\"- Je suis bien aise de vous voir, me dit le roi sur un ton amical.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Dans chaque camp, ils se sont mobilisés pour donner envie aux "
                "gens de voter comme eux.",
                "non.",
            ),
            AnnotatedExample(
                "- Je suis bien aise de vous voir, me dit le roi sur un ton "
                "amical.",
                "oui.",
            ),
            AnnotatedExample("Beurk !", "non."),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample(
                "Pour fêter ses buts, il lui arrive souvent de danser.", "oui."
            ),
        ),
    ),
    LabelPromptSpec(
        label="fear",
        order=4,
        definition=(
            "La catégorie émotionnelle \"peur\" recouvre les émotions suivantes: "
            "angoisse, appréhension, effroi, horreur, inquiétude, méfiance, peur, "
            "stress et timidité."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **peur** est présente ?"
        ),
        plain_examples=(
            "\"Le Front national, qui est d'extrême droite, faisait peur, à cause "
            "des idées qu'il défendait.\"",
            "\"Il y avait un grand silence dans la maison.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Le Front national, qui est d'extrême droite, faisait peur, à "
                "cause des idées qu'il défendait.",
                "oui.",
            ),
            AnnotatedExample(
                "Dans chaque camp, ils se sont mobilisés pour donner envie aux "
                "gens de voter comme eux.",
                "non.",
            ),
            AnnotatedExample(
                "Ça peut paraître dégoûtant, mais on peut manger des insectes.",
                "non.",
            ),
            AnnotatedExample(
                "Récemment, une nouvelle autorisation a été délivrée pour un "
                "deuxième test dans le courant de l'année 2019.",
                "non",
            ),
            AnnotatedExample("Il y avait un grand silence dans la maison.", "oui."),
        ),
    ),
    LabelPromptSpec(
        label="surprise",
        order=5,
        definition=(
            "La catégorie émotionnelle \"surprise\" recouvre les émotions "
            "suivantes: étonnement, stupeur, surprise."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **surprise** est présente ?"
        ),
        plain_examples=(
            "\"Finalement, ils ont été pris en charge... par les agriculteurs "
            "locaux, dans un camion benne !\"",
            "\"Tous, étonnés, se taisent.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Finalement, ils ont été pris en charge... par les agriculteurs "
                "locaux, dans un camion benne !",
                "oui.",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample(
                "Mais quand Flavia découvre le jeune génie du piano, elle se sent "
                "comme écrasée.",
                "non.",
            ),
            AnnotatedExample("Beurk !", "non."),
            AnnotatedExample("Tous, étonnés, se taisent.", "oui."),
        ),
    ),
    LabelPromptSpec(
        label="sadness",
        order=6,
        definition=(
            "La catégorie émotionnelle \"tristesse\" recouvre les émotions "
            "suivantes: blues, chagrin, déception, désespoir, peine, souffrance "
            "et tristesse."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **tristesse** est présente ?"
        ),
        plain_examples=(
            "\"Sa mère venait de mourir et son père était au front.\"",
            "\"L'âne continuait à examiner la peinture d'un regard plutôt attristé.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample(
                "Le Front national, qui est d'extrême droite, faisait peur, à "
                "cause des idées qu'il défendait.",
                "non.",
            ),
            AnnotatedExample(
                "Sa mère venait de mourir et son père était au front.", "oui."
            ),
            AnnotatedExample(
                "Légèrement décontenancée, la prof s'est raclé la gorge et "
                "commencé la lecture.",
                "non.",
            ),
            AnnotatedExample(
                "L'âne continuait à examiner la peinture d'un regard plutôt "
                "attristé.",
                "oui.",
            ),
        ),
    ),
    LabelPromptSpec(
        label="admiration",
        order=7,
        definition=(
            "La catégorie émotionnelle \"admiration\" recouvre les émotions "
            "suivantes: admiration."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **admiration** est présente ?"
        ),
        plain_examples=(
            "\"De nos jours, ce site exceptionnel permet de montrer toute la "
            "richesse de la civilisation romaine et la façon dont les villes et "
            "la société étaient organisées.\"",
            "\"- Tes enfants sont vraiment merveilleux, ma chérie, dit-elle à sa "
            "fille.\"",
        ),
        annotated_examples=(
            AnnotatedExample("Tous, étonnés, se taisent.", "non."),
            AnnotatedExample(
                "De nos jours, ce site exceptionnel permet de montrer toute la "
                "richesse de la civilisation romaine et la façon dont les villes "
                "et la société étaient organisées.",
                "oui.",
            ),
            AnnotatedExample(
                "Magawa peut être fier de lui, car il vient de recevoir une "
                "médaille d'or.",
                "non.",
            ),
            AnnotatedExample(
                "Avant de sortir, Billy prépare un dîner orange : une soupe de "
                "potiron, des cuisses de canard à l'orange avec une purée de "
                "carottes et une tarte à la citrouille.",
                "non",
            ),
            AnnotatedExample(
                "- Tes enfants sont vraiment merveilleux, ma chérie, dit-elle à "
                "sa fille.",
                "oui.",
            ),
        ),
    ),
    LabelPromptSpec(
        label="guilt",
        order=8,
        definition=(
            "La catégorie émotionnelle \"culpabilité\" recouvre les émotions "
            "suivantes: culpabilité."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **culpabilité** est présente ?"
        ),
        plain_examples=(
            "\"Et je l'avais bien mérité.\"",
            "\"Surtout, il ne faut pas se sentir coupable de ne pas avoir réagi.\"",
        ),
        annotated_examples=(
            AnnotatedExample("Et je l'avais bien mérité.", "oui."),
            AnnotatedExample("Tous, étonnés, se taisent.", "non."),
            AnnotatedExample(
                "Surtout, il ne faut pas se sentir coupable de ne pas avoir "
                "réagi.",
                "oui.",
            ),
            AnnotatedExample("Tous, étonnés, se taisent.", "non."),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
        ),
    ),
    LabelPromptSpec(
        label="embarrassment",
        order=9,
        definition=(
            "La catégorie émotionnelle \"embarras\" recouvre les émotions "
            "suivantes: embarras, gêne, honte, humiliation et timidité."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **embarras** est présente ?"
        ),
        plain_examples=(
            "\"Après cette humiliante défaite, Napoléon abdique une nouvelle "
            "fois, ce qui marque définitivement la fin de l'Empire et de sa "
            "période de retour appelée \"les Cent jours\".\"",
            "\"Légèrement décontenancée, la prof s'est raclé la gorge et commencé "
            "la lecture.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Le Front national, qui est d'extrême droite, faisait peur, à "
                "cause des idées qu'il défendait.",
                "non.",
            ),
            AnnotatedExample(
                "- Tes enfants sont vraiment merveilleux, ma chérie, dit-elle à "
                "sa fille.",
                "non.",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample(
                "Après cette humiliante défaite, Napoléon abdique une nouvelle "
                "fois, ce qui marque définitivement la fin de l'Empire et de sa "
                "période de retour appelée \"les Cent jours\".",
                "oui.",
            ),
            AnnotatedExample(
                "Légèrement décontenancée, la prof s'est raclé la gorge et "
                "commencé la lecture.",
                "oui.",
            ),
        ),
    ),
    LabelPromptSpec(
        label="pride",
        order=10,
        definition=(
            "La catégorie émotionnelle \"fierté\" recouvre les émotions "
            "suivantes: fierté et orgueil."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **fierté** est présente ?"
        ),
        plain_examples=(
            "\"Flavia entre dans la cour comme une conquérante, entourée de ses "
            "supporters.\"",
            "\"Magawa peut être fier de lui, car il vient de recevoir une "
            "médaille d'or.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Avant de sortir, Billy prépare un dîner orange : une soupe de "
                "potiron, des cuisses de canard à l'orange avec une purée de "
                "carottes et une tarte à la citrouille.",
                "non",
            ),
            AnnotatedExample(
                "On dirait presque qu'il fait partie de l'instrument.", "non."
            ),
            AnnotatedExample(
                "Magawa peut être fier de lui, car il vient de recevoir une "
                "médaille d'or.",
                "oui.",
            ),
            AnnotatedExample(
                "Flavia entre dans la cour comme une conquérante, entourée de ses "
                "supporters.",
                "oui.",
            ),
            AnnotatedExample("Il y avait un grand silence dans la maison.", "non."),
        ),
    ),
    LabelPromptSpec(
        label="jealousy",
        order=11,
        definition=(
            "La catégorie émotionnelle \"jalousie\" recouvre les émotions "
            "suivantes: jalousie."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **jalousie** est présente ?"
        ),
        plain_examples=(
            "\"Mais quand Flavia découvre le jeune génie du piano, elle se sent "
            "comme écrasée.\"",
            "\"On dirait presque qu'il fait partie de l'instrument.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "On dirait presque qu'il fait partie de l'instrument.", "oui."
            ),
            AnnotatedExample("Et je l'avais bien mérité.", "non."),
            AnnotatedExample("Et je l'avais bien mérité.", "non."),
            AnnotatedExample(
                "Mais quand Flavia découvre le jeune génie du piano, elle se sent "
                "comme écrasée.",
                "oui.",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
        ),
    ),
    LabelPromptSpec(
        label="other",
        order=12,
        definition=(
            "La catégorie émotionnelle \"autre\" recouvre les émotions suivantes: "
            "amour, courage, curiosité, désir, détermination, envie, espoir, "
            "haine, impuissance, mépris et soulagement."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que la catégorie "
            "émotionnelle **autre** est présente ?"
        ),
        plain_examples=(
            "\"Dans chaque camp, ils se sont mobilisés pour donner envie aux gens "
            "de voter comme eux.\"",
            "\"Ils n'apprécient pas du tout l'attitude des dirigeants, notamment "
            "celle du président, \"qu'ils jugent méprisant, déconnecté de la "
            "réalité, du quotidien\", note le sociologue Alexis Spire.\"",
        ),
        annotated_examples=(
            AnnotatedExample(
                "De nos jours, ce site exceptionnel permet de montrer toute la "
                "richesse de la civilisation romaine et la façon dont les villes "
                "et la société étaient organisées.",
                "non.",
            ),
            AnnotatedExample(
                "L'âne continuait à examiner la peinture d'un regard plutôt "
                "attristé.",
                "non.",
            ),
            AnnotatedExample(
                "Récemment, une nouvelle autorisation a été délivrée pour un "
                "deuxième test dans le courant de l'année 2019.",
                "non",
            ),
            AnnotatedExample(
                "Ils n'apprécient pas du tout l'attitude des dirigeants, "
                "notamment celle du président, \"qu'ils jugent méprisant, "
                "déconnecté de la réalité, du quotidien\", note le sociologue "
                "Alexis Spire.",
                "oui.",
            ),
            AnnotatedExample(
                "Dans chaque camp, ils se sont mobilisés pour donner envie aux "
                "gens de voter comme eux.",
                "oui.",
            ),
        ),
    ),
    LabelPromptSpec(
        label="basic",
        order=13,
        definition=(
            "Les émotions suivantes sont dites \"de base\" : Colère, Dégoût, "
            "Joie, Peur, Surprise, Tristesse."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, contient-elle une "
            "**émotion de base** ?"
        ),
    ),
    LabelPromptSpec(
        label="complex",
        order=14,
        definition=(
            "Les émotions suivantes sont dites \"complexes\": Admiration, "
            "Culpabilité, Embarras, Fierté, Jalousie."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, contient-elle une "
            "**émotion complexe** ?"
        ),
    ),
    LabelPromptSpec(
        label="labeled",
        order=15,
        definition=(
            "Une émotion est dite du mode \"désigné\" lorsqu'elle est exprimée "
            "par un terme du lexique émotionnel."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que le mode "
            "**désigné** est utilisé ?"
        ),
        plain_examples=(
            "\"Pierre est heureux d'être bientôt à la retraite.\", où la joie de "
            "Pierre est désignée par le terme \"heureux\".",
            "\"Cette information a beaucoup énervé Marie.\", où la colère de "
            "Marie est désignée par le terme \"énervé\".",
        ),
        annotated_examples=(
            AnnotatedExample(
                "Pierre est heureux d'être bientôt à la retraite.",
                "oui (car la joie de Pierre est désignée par le terme "
                "\"heureux\").",
            ),
            AnnotatedExample("Oh, non... C'est vraiment dommage !", "non."),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample("Oh, non... C'est vraiment dommage !", "non."),
            AnnotatedExample(
                "Cette information a beaucoup énervé Marie.",
                "oui (car la colère de Marie est désignée par le terme "
                "\"énervé\").",
            ),
        ),
    ),
    LabelPromptSpec(
        label="behavioral",
        order=16,
        definition=(
            "Une émotion est dite du mode \"comportemental\" lorsqu'elle est "
            "exprimée par la description d'une manifestation physique "
            "(physiologique ou comportementale) de l'émotion."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que le mode "
            "**comportemental** est utilisé ?"
        ),
        plain_examples=(
            "\"Paul sanglote.\", où la tristesse de Paul est exprimée par le "
            "comportement \"sanglote\".",
            "\"Andrée a sautillé partout en chantant.\", où la joie de Andrée est "
            "exprimée par le comportement \"sautillé partout en chantant\".",
        ),
        annotated_examples=(
            AnnotatedExample("Cette information a beaucoup énervé Marie.", "non."),
            AnnotatedExample(
                "Paul sanglote.",
                "oui (car la tristesse de Paul est exprimée par le comportement "
                "\"sanglote\").",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
            AnnotatedExample(
                "Le père de Jeanne est mort hier à cause d'un cancer.", "non."
            ),
            AnnotatedExample(
                "Andrée a sautillé partout en chantant.",
                "oui (car la joie de Andrée est exprimée par le comportement "
                "\"sautillé partout en chantant\").",
            ),
        ),
    ),
    LabelPromptSpec(
        label="displayed",
        order=17,
        definition=(
            "Une émotion est dite du mode \"montré\" lorsqu'elle est exprimée par "
            "des caractéristiques linguistiques de l'énoncé qui traduisent l'état "
            "émotionnel dans lequel se trouvait l'énonciateur au moment de "
            "l'énonciation."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que le mode "
            "**montré** est utilisé ?"
        ),
        plain_examples=(
            "\"Oh, chouette ! Quelle bonne idée !\", car la joie de l'énonciateur "
            "est traduite au sein de l'énoncé par les interjections \"oh\" et "
            "\"chouette\", les énoncés averbaux et les points d'exclamations.",
            "\"Oh, non... C'est vraiment dommage !\", car la tristesse de "
            "l'énonciateur est traduite au sein de l'énoncé par l'interjection "
            "\"oh\", l'énoncé averbal, les points de suspension et le point "
            "d'exclamation.",
        ),
        annotated_examples=(
            AnnotatedExample("Andrée a sautillé partout en chantant.", "non."),
            AnnotatedExample("Paul sanglote.", "non."),
            AnnotatedExample(
                "Oh, chouette ! Quelle bonne idée !",
                "oui (car la joie de l'énonciateur est traduite au sein de "
                "l'énoncé par les interjections \"oh\" et \"chouette\", les "
                "énoncés averbaux et les points d'exclamations).",
            ),
            AnnotatedExample(
                "Oh, non... C'est vraiment dommage !",
                "oui (car la tristesse de l'énonciateur est traduite au sein de "
                "l'énoncé par l'interjection \"oh\", l'énoncé averbal, les points "
                "de suspension et le point d'exclamation.)",
            ),
            AnnotatedExample(
                "Avant d'arriver devant une salle de classe, les enseignants, eux "
                "aussi, sont sur les bancs de l'école.",
                "non",
            ),
        ),
    ),
    LabelPromptSpec(
        label="suggested",
        order=18,
        definition=(
            "Une émotion est dite du mode \"suggéré\" lorsqu'elle est exprimée "
            "par la description d'une situation associée de manière "
            "conventionnelle à un ressenti émotionnel."
        ),
        definition_counterexamples=(
            "Une émotion est dite \"suggérée\" lorsqu'elle est exprimée par la "
            "description d'une situation associée de manière conventionnelle à "
            "un ressenti émotionnel."
        ),
        question=(
            "Si la phrase à annoter est émotionnelle, est-ce que le mode "
            "**suggéré** est utilisé ?"
        ),
        plain_examples=(
            "\"Le père de Jeanne est mort hier à cause d'un cancer.\", où la "
            "tristesse de Jeanne est suggérée par la description du décès, il y a "
            "peu de temps, de son père (une personne proche d'elle).",
            "\"Ces deux amis se retrouvent après une longue séparation.\", où la "
            "joie des deux amis est suggérée par la description de leurs "
            "retrouvailles après un temps long.",
        ),
        annotated_examples=(
            AnnotatedExample("Oh, chouette ! Quelle bonne idée !", "non."),
            AnnotatedExample(
                "Le père de Jeanne est mort hier à cause d'un cancer.",
                "oui (car où la tristesse de Jeanne est suggérée par la "
                "description du décès, il y a peu de temps, de son père, une "
                "personne proche d'elle).",
            ),
            AnnotatedExample(
                "Ces deux amis se retrouvent après une longue séparation.",
                "oui (car la joie des deux amis est suggérée par la description "
                "de leurs retrouvailles après un temps long).",
            ),
            AnnotatedExample(
                "De 2007 à 2012, il a été le Premier ministre de l'ancien "
                "président Nicolas Sarkozy.",
                "non",
            ),
            AnnotatedExample("Andrée a sautillé partout en chantant.", "non."),
        ),
    ),
)


@dataclass(frozen=True)
class Conversation:
    """A rendered 19-question conversation template.

    ``user_turns`` holds the questions in protocol order; assistant
    replies are interleaved at annotation time. ``as_messages`` produces
    the strictly alternating wire form up to a given turn.
    """

    system: str
    user_turns: tuple[str, ...]
    variant: str

    def as_messages(self, replies: tuple[str, ...] = ()) -> list[dict]:
        if len(replies) >= len(self.user_turns):
            raise ValueError("more replies than remaining questions")
        messages = [{"role": "system", "content": self.system}]
        for i, turn in enumerate(self.user_turns[: len(replies) + 1]):
            messages.append({"role": "user", "content": turn})
            if i < len(replies):
                messages.append({"role": "assistant", "content": replies[i]})
        return messages

    def to_text(self) -> str:
        parts = [f"=== system ===\n{self.system}"]
        for i, turn in enumerate(self.user_turns, start=1):
            parts.append(f"=== user {i}/{len(self.user_turns)} ===\n{turn}")
        return "\n".join(parts) + "\n"


def validate_specs(specs: tuple[LabelPromptSpec, ...]) -> None:
    if len(specs) != len(QUESTION_ORDER):
        raise MissingSpec(f"expected {len(QUESTION_ORDER)} specs, got {len(specs)}")
    for i, (spec, label) in enumerate(zip(specs, QUESTION_ORDER)):
        if spec.label != label or spec.order != i:
            raise MissingSpec(f"spec {i} should be {label!r}, got {spec.label!r}")
    for spec in specs:
        has_plain_negatives = any(
            e.startswith("non ") for e in spec.plain_examples
        )
        if (spec.label == "emotional") != has_plain_negatives and spec.plain_examples:
            raise MissingSpec(
                "only the presence question carries counter-examples in the "
                "positives-only variant"
            )


def _plain_turn(spec: LabelPromptSpec) -> str:
    block = f"Définition: {spec.definition}"
    if spec.plain_examples:
        block += f" {spec.plain_example_intro}\n"
        block += "\n".join(f"- {e}" for e in spec.plain_examples)
    block += f"\n\nQuestion: {spec.question}\n\nRéponse (oui/non):"
    return block


def _annotated_turn(spec: LabelPromptSpec, annotation_line: str) -> str:
    definition = spec.definition_counterexamples or spec.definition
    block = f"Définition : {definition}\n\nQuestion : {spec.question}"
    if spec.annotated_examples:
        block += "\n\nExemples :\n"
        block += "\n".join(
            f"- <annotate>{e.text}</annotate> -> {e.answer}"
            for e in spec.annotated_examples
        )
    block += f"\n\nAnnotation (oui/non) :\n{annotation_line}"
    return block


def build_conversation(
    ctx: ContextTriple,
    specs: tuple[LabelPromptSpec, ...] = PROMPT_SPECS,
    variant: str = POSITIVES_ONLY,
) -> Conversation:
    """Render the 19-question conversation for one sentence triple.

    Deterministic and byte-stable; absent neighbours render as empty
    strings between the fixed markers.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    validate_specs(specs)
    previous = ctx.previous or ""
    nxt = ctx.next or ""
    target = ctx.target.text
    if variant == POSITIVES_ONLY:
        system = SYSTEM_POSITIVES_ONLY.format(
            previous=previous, target=target, next=nxt
        )
        turns = tuple(_plain_turn(s) for s in specs)
    else:
        system = SYSTEM_WITH_COUNTEREXAMPLES
        line = ANNOTATION_LINE.format(previous=previous, target=target, next=nxt)
        turns = tuple(_annotated_turn(s, line) for s in specs)
    return Conversation(system=system, user_turns=turns, variant=variant)
