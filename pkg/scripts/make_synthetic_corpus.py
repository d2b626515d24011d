#!/usr/bin/env python3
"""Regenerate the bundled synthetic corpus (data/synthetic/).

Deterministic: same seed, same files. Jokes carry planted signals (dialog
dashes, question-answer pairs, joke keywords, exclamations, informal
laughter); non-humorous accounts post news, reflections and curious facts.
Crowd annotations are constructed so aggregation yields known label counts,
including a couple of bot bursts that the annotation filter must remove.
"""

import json
import random
from pathlib import Path

SEED = 20160501
OUT_DIR = Path(__file__).resolve().parents[1] / "data" / "synthetic"

HUMOROUS_ACCOUNTS = ["chistesdiarios", "humor_total", "reidero"]
NEWS_ACCOUNTS = ["noticias24", "eldiario_info"]
REFLECTION_ACCOUNTS = ["frases_vida", "pensamiento_zen"]
FACT_ACCOUNTS = ["datoscuriosos", "sabercurioso"]


def dialog_jokes():
    pairs = [
        ("¿Cuál es el colmo de un doctor?", "¡Que su mujer pierda la paciencia!"),
        ("¿Cuál es el colmo de un abogado?", "¡Que pierda el juicio en su boda!"),
        ("¿Cuál es el colmo de un payaso?", "¡Que el circo le parezca serio!"),
        ("¿Cuál es el colmo de un calvo?", "¡Encontrar un pelo en la sopa y ponerse celoso!"),
        ("¿Cuál es el colmo de un ladrón?", "¡Que le roben el corazón!"),
        ("¿Cuál es el colmo de un camarero?", "¡Que la vida le sirva todo frío!"),
        ("¿Por qué el perro entra a la taberna?", "¡Porque busca al cantinero que le debe un hueso!"),
        ("¿Por qué la gallina cruza la plaza?", "¡Porque el gallo paga la cuenta!"),
        ("¿Por qué el gato no juega futbol?", "¡Porque siempre pide la pata!"),
        ("¿Qué hace tu suegra en la cocina?", "¡Nada, por eso pido pizza!"),
        ("¿Qué le dice un pez a otro pez?", "¡Nada, nada, nada!"),
        ("¿Qué le dice el cero al ocho?", "¡Bonito cinturón te compraste!"),
        ("¿Me prestas dinero para un chiste?", "¡No, los chistes gratis son mejores!"),
        ("¿Viste al borracho en el banco?", "¡Sí, pedía un préstamo de cerveza!"),
        ("¿Tu perro sabe matemática?", "¡No, por eso el gato lleva las cuentas!"),
        ("¿Vamos al circo a ver al mago?", "¡No puedo, mi suegra ya hace desaparecer mi dinero!"),
    ]
    out = []
    for q, a in pairs:
        out.append(f"--- {q}\n--- {a}")
    extra = [
        "--- Camarero, hay una mosca en mi sopa.\n--- Tranquilo, el cocinero le pone poca.",
        "--- Doctor, me duele todo el cuerpo.\n--- Pues no se toque nada.",
        "--- Pepito, dime una palabra con muchas letras.\n--- ¡Letras, señorita!",
        "--- Mamá, en la escuela dicen que soy mentiroso.\n--- Hijo, si tú no vas a la escuela.",
        "--- Jaimito, ¿por qué llega tarde?\n--- Porque el cartel dice escuela, despacio.",
        "--- Nada es imposible, amigo.\n--- ¿Sí? Tocate la espalda con la rodilla.",
        "--- Te apuesto una cerveza a que dejo de tomar.\n--- ¡Salud por esa mentira!",
        "--- Mi amor, estoy a dieta.\n--- ¿Y el pastel? ¡Es mi testigo!",
    ]
    return out + extra


def qa_jokes():
    qa = [
        "¿Qué le dice una iguana a su hermana gemela? Somos iguanitas. JAJAJA",
        "¿Qué hace una abeja en el gimnasio? ¡Zumba toda la tarde!",
        "¿Cómo se despide un químico? Ácido un placer. ¡JAJA!",
        "¿Por qué el libro de matemática está triste? Tiene demasiados problemas. JAJAJA",
        "¿Qué hace un perro con un taladro? Taladrando, obvio. ¡JAJA!",
        "¿Cuál es el café más peligroso del mundo? El ex preso. JAJAJA #chiste",
        "¿Por qué la vaca mira al cielo? Busca la vía láctea. ¡JAJAJA!",
        "¿Qué le dice un semáforo a otro? No me mires que me estoy cambiando. JAJA",
        "¿Por qué el tomate no duerme? La ensalada lo deja en salsa. ¡JAJA!",
        "¿Cómo llama el vaquero a su hija? ¡Hijaaa! JAJAJA",
        "¿Qué dice un gusano sobre la manzana? Me voy a dar una vuelta. JAJA #humor",
        "¿Por qué el esqueleto no pelea? Porque no tiene agallas. ¡JAJAJA!",
        "¿Cuál es el colmo del electricista? Que su mujer se llame Luz. JAJA",
        "¿Qué hace el pollo en el ascensor? ¡Pío, pío, sube! JAJAJA",
        "¿Por qué las focas miran arriba? ¡Porque ahí están los focos! JAJA",
        "¿Qué le dijo la luna al sol? Tan grande y no te dejan salir de noche. JAJAJA",
        "¿Por qué el mar no se seca? Porque no tiene toalla. ¡JAJA! #chiste",
        "¿Cuál es el pez que huele mucho? El pez tufo. JAJAJA",
        "¿Qué hace una vaca en un terremoto? ¡Leche en polvo! JAJAJA",
        "¿Por qué el pájaro usa internet? Para mandar twitter. JAJA",
    ]
    return qa


def oneliner_jokes():
    lines = [
        "Mi suegra me dijo que no llego a nada y le respondí que ya logré verla poco. JAJAJA",
        "El ladrón más tonto del pueblo robó un calendario y le dieron doce meses. JAJA",
        "Ayer compré un libro de antigravedad y no lo puedo soltar. ¡JAJAJA!",
        "Mi perro se llama Cinco Kilos, así digo que corro Cinco Kilos cada día. JAJA",
        "No es lo mismo la cerveza del vecino que el vecino de la cerveza. JAJAJA",
        "No es lo mismo un gallo viejo que un viejo gallo, dijo la gallina. ¡JAJA!",
        "Estoy a dieta de agua: tres días comiendo solo agua y pan y pastel. JAJAJA",
        "El doctor me pidió paciencia y le dije que esa señora no es mi paciente. JAJA",
        "Mi jefe pidió que trabaje con alegría, así que alegría no vino hoy. JAJAJA #humor",
        "Le dije a mi novia que era única y me dijo que yo era el último de la fila. JAJA",
        "El gallego pidió la pizza en ocho porciones porque doce es demasiado. JAJAJA",
        "Mi abuela camina cinco kilómetros al día y ya no sabemos dónde está. ¡JAJAJA!",
        "Fui al banco por un préstamo y el cajero solo me prestó atención. JAJA",
        "Mi gato está tan gordo que el veterinario le recetó un ratón de gimnasio. JAJAJA",
        "El fantasma del castillo renunció porque el dragón no lo deja dormir. JAJA",
        "La bruja pidió un deseo y el genio pidió cambio de turno. ¡JAJAJA!",
        "El payaso del circo me pidió consejos, creo que el tonto soy yo. JAJA",
        "Hoy corrí cinco minutos y ya pido taxi para volver del parque. ¡JAJAJA!",
        "Mi vecino presume coche nuevo y yo presumo deuda nueva. JAJA #chiste",
        "Puse mi despertador como música suave y ahora duermo con estilo. JAJAJA",
        "Vendo suegra en buen estado, apenas usada los domingos. ¡JAJAJA!",
        "Dice mi madre que ordene mi cuarto y yo ordeno pizza. JAJA",
        "El lunes y yo tenemos algo en común: nadie nos quiere. JAJAJA",
        "Mi cama y yo somos la pareja perfecta pero el despertador es celoso. ¡JAJA!",
        "El espejo y yo no nos hablamos desde esta mañana temprano. JAJAJA",
        "Compré zapatos de segunda mano para caminar con pasos ajenos. JAJA",
        "Mi billetera es como la cebolla, la abro y lloro. ¡JAJAJA!",
        "El wifi del vecino y mi suerte se cortan a la vez. JAJA",
    ]
    return lines


def promo_texts():
    base = [
        "Síguenos y comparte para más contenido cada día http://humor.example/suscripcion",
        "Ya somos veinte mil seguidores, gracias por el apoyo http://humor.example/gracias",
        "Apoyamos la campaña de donación de sangre del hospital central",
        "Hoy no publicamos, día triste para todo el equipo",
        "Manda tu mejor material por mensaje y lo publicamos el viernes",
        "Nuestra cuenta cumple tres años, gracias por estar",
        "Comparte esta cuenta con tus amigos http://humor.example/invita",
        "Encuesta: ¿prefieren material por la mañana o por la noche?",
        "Estamos buscando editores para el equipo, escribe por mensaje",
        "Feliz año nuevo les desea todo el equipo de la cuenta",
        "Recuerden seguir las reglas del concurso en el enlace http://humor.example/reglas",
        "El ganador del concurso fue anunciado en nuestra página",
        "Volvemos el lunes con la programación habitual",
        "Gracias por los mensajes de apoyo de esta semana",
    ]
    variants = [t + " " for t in base[:14]]
    return base + [v.strip() + "." for v in variants]


def weak_jokes():
    return [
        "El que madruga encuentra todo cerrado todavía",
        "Dicen que el dinero no da la felicidad, pero calma los nervios",
        "Mi plan del sábado es no tener plan",
        "El café de la oficina cuenta como desayuno completo",
        "Las escaleras me saludan y yo tomo el ascensor",
        "Hoy pensé en hacer deporte y con pensar basta",
        "La dieta empieza el lunes que viene, como todos los meses",
        "Mi memoria es buena pero corta como este mensaje",
        "El tráfico de hoy me enseñó paciencia obligatoria",
        "Se me olvidó lo que iba a publicar",
        "Lo mejor del lunes es que queda lejos el otro lunes",
        "Mi planta y yo tenemos sed a la misma hora",
        "El control remoto siempre está en la otra punta",
        "Hoy gané la carrera contra el autobús y perdí el aire",
        "La nevera está llena de buenas intenciones",
        "Mi paraguas solo funciona cuando no llueve",
        "El lavadero me cobra por planchar mis dudas",
        "Mi reloj marca la hora de otra ciudad más divertida",
        "El vecino ensaya violín y mi paciencia ensaya silencio",
        "Hoy el espejo me pidió vacaciones",
    ]


def news_texts(rng):
    orgs = [
        "El gobierno",
        "El ministerio de salud",
        "El ministerio de educación",
        "El congreso",
        "El banco central",
        "La empresa nacional de energía",
        "El municipio",
        "La universidad pública",
        "El tribunal superior",
    ]
    actions = [
        "anuncia nuevas medidas para el sector",
        "confirma la reforma del sistema de transporte",
        "aprueba el presupuesto del próximo año",
        "publica el informe anual de resultados",
        "informa una reducción de impuestos a las empresas",
        "presenta el plan de seguridad para la capital",
        "reporta un aumento del turismo en la región",
        "anuncia inversión en hospitales y escuelas",
        "confirma el acuerdo comercial con los países vecinos",
        "publica las cifras de empleo del trimestre",
    ]
    out = []
    i = 0
    while len(out) < 45:
        org = orgs[i % len(orgs)]
        act = actions[(i * 7 + 3) % len(actions)]
        text = f"{org} {act}"
        if i % 2 == 0:
            text += f" http://noticia.example/{1000 + i}"
        out.append(text)
        i += 1
    return out


def reflection_texts():
    base = [
        "La vida es un camino que se recorre paso a paso",
        "Cada día trae una oportunidad nueva para empezar",
        "La paciencia es la llave de todas las puertas grandes",
        "Quien siembra respeto cosecha confianza",
        "El silencio también es una respuesta sabia",
        "La gratitud convierte lo poco en suficiente",
        "Los sueños grandes empiezan con pasos pequeños",
        "La calma es la fuerza de los que esperan",
        "El tiempo ordena lo que la prisa desordena",
        "Las palabras amables abren caminos cerrados",
        "El esfuerzo de hoy es el descanso de mañana",
        "La humildad pesa poco y vale mucho",
        "Aprender es un viaje que no termina nunca",
        "La esperanza es la luz que no se apaga",
        "Un corazón agradecido siempre encuentra paz",
        "La verdad camina lento pero llega primero",
        "El perdón libera a quien lo ofrece",
        "La constancia vence lo que el talento deja",
        "Escuchar es la forma más noble de hablar",
        "La sencillez es la elegancia del alma",
        "Los buenos amigos son la familia que se elige",
        "El saber compartido vale el doble",
        "La noche más larga también termina en día",
        "Quien cuida los detalles cuida lo importante",
        "La amabilidad no cuesta y paga mucho",
        "El respeto se gana con ejemplo diario",
        "Una mente tranquila ve todos los caminos",
        "La lectura es un viaje sin equipaje",
        "El trabajo honesto no necesita aplausos",
        "La felicidad crece cuando se comparte",
        "Los errores son maestros con mal humor",
        "La prudencia es la madre de la confianza",
        "Cada persona que conoces sabe algo que tú no",
        "El agradecimiento es la memoria del corazón",
        "La disciplina es el puente entre el deseo y el logro",
        "Las raíces profundas no temen al viento",
        "El optimismo es el perfume de la vida",
        "Saber esperar es saber ganar",
        "La bondad es un idioma que todos entienden",
        "El presente es el único tiempo verdadero",
        "Una palabra amable calienta tres inviernos",
        "La experiencia es el peine que llega con la calva",
        "El orgullo pesa más que cualquier equipaje",
        "Los momentos simples son los recuerdos grandes",
        "La paz interior empieza con una respiración honda",
    ]
    return base[:45]


def build_tweets():
    jokes = dialog_jokes() + qa_jokes() + oneliner_jokes()
    assert len(jokes) == 72, len(jokes)
    promos = promo_texts()[:28]
    weak = weak_jokes()
    return jokes, promos, weak


POSITIVE_PLANS = [
    ["star4", "star3", "not_humor", "star5", "star2", "not_humor"],  # 4/6
    ["star5", "star4", "not_humor"],  # 2/3
    ["star3", "star3", "star4", "not_humor", "not_humor"],  # 3/5 boundary
    ["star5", "star5"],  # 1.0, kappa-eligible at 2 raters
    ["star4", "star2", "star5", "not_humor"],  # 3/4
    ["star3"],  # 1/1
    ["star1", "star4", "star3"],  # 1.0
    ["star5", "star3", "skip"],  # 1.0 countable 2
]

HUM_NEG_PLANS = [
    ["not_humor", "not_humor", "not_humor"],
    ["not_humor", "not_humor"],
    ["not_humor", "not_humor", "not_humor", "star2"],  # 1/4
    ["not_humor"],
    ["not_humor", "not_humor", "not_humor", "not_humor", "star1"],  # 1/5
    ["not_humor", "skip", "not_humor"],
]

DOUBTFUL_PLANS = [
    [],
    ["skip", "skip"],
    ["star3", "not_humor"],  # 0.5
    ["star2", "not_humor", "not_humor"],  # 1/3
    ["star4", "star1", "not_humor", "not_humor", "not_humor"],  # 2/5
    [],
]


def main():
    rng = random.Random(SEED)
    jokes, promos, weak = build_tweets()
    news = news_texts(rng)
    reflections = reflection_texts()
    facts = fact_list()

    tweets = []
    hum_id = 0

    def add_humorous(text):
        nonlocal hum_id
        hum_id += 1
        tweets.append(
            {
                "id": f"h{hum_id:03d}",
                "text": text,
                "account": HUMOROUS_ACCOUNTS[hum_id % len(HUMOROUS_ACCOUNTS)],
                "account_kind": "humorous",
            }
        )
        return tweets[-1]["id"]

    joke_ids = [add_humorous(t) for t in jokes]
    promo_ids = [add_humorous(t) for t in promos]
    weak_ids = [add_humorous(t) for t in weak]

    neg_id = 0

    def add_plain(text, account, kind):
        nonlocal neg_id
        neg_id += 1
        tweets.append(
            {"id": f"n{neg_id:03d}", "text": text, "account": account, "account_kind": kind}
        )

    for i, t in enumerate(news):
        add_plain(t, NEWS_ACCOUNTS[i % 2], "news")
    for i, t in enumerate(reflections):
        add_plain(t, REFLECTION_ACCOUNTS[i % 2], "reflections")
    for i, t in enumerate(facts):
        add_plain(t, FACT_ACCOUNTS[i % 2], "curious_facts")

    # --- annotations ---
    sessions = [f"s{i:03d}" for i in range(1, 41)]
    next_ts = {s: 1_460_000_000_000 + i * 60_000 for i, s in enumerate(sessions)}
    used = set()  # (session, tweet) pairs
    annotations = []
    cursor = 0

    def organic_vote(tweet_id, vote):
        nonlocal cursor
        for _ in range(len(sessions)):
            session = sessions[cursor % len(sessions)]
            cursor += 1
            if (session, tweet_id) not in used:
                used.add((session, tweet_id))
                next_ts[session] += rng.randint(5_000, 15_000)
                annotations.append(
                    {
                        "tweet_id": tweet_id,
                        "session_id": session,
                        "timestamp_ms": next_ts[session],
                        "vote": vote,
                    }
                )
                return
        raise AssertionError("ran out of sessions")

    for i, tid in enumerate(joke_ids):
        for vote in POSITIVE_PLANS[i % len(POSITIVE_PLANS)]:
            organic_vote(tid, vote)
    for i, tid in enumerate(promo_ids):
        for vote in HUM_NEG_PLANS[i % len(HUM_NEG_PLANS)]:
            organic_vote(tid, vote)
    for i, tid in enumerate(weak_ids):
        for vote in DOUBTFUL_PLANS[i % len(DOUBTFUL_PLANS)]:
            organic_vote(tid, vote)

    # bot bursts: same session, same vote, rapid fire across tweets.
    # the burst filter must drop these, protecting the joke ratios.
    for bot, vote, targets in [
        ("bot001", "not_humor", joke_ids[0:6]),
        ("bot002", "star5", promo_ids[0:6]),
    ]:
        ts = 1_460_100_000_000
        for tid in targets:
            ts += 300
            annotations.append(
                {"tweet_id": tid, "session_id": bot, "timestamp_ms": ts, "vote": vote}
            )

    # scattered skips: never change any label
    skip_targets = joke_ids[10:16] + weak_ids[5:8]
    for tid in skip_targets:
        organic_vote(tid, "skip")

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with open(OUT_DIR / "tweets.jsonl", "w", encoding="utf-8") as fh:
        for t in tweets:
            fh.write(json.dumps(t, ensure_ascii=False) + "\n")
    with open(OUT_DIR / "annotations.jsonl", "w", encoding="utf-8") as fh:
        for a in annotations:
            fh.write(json.dumps(a, ensure_ascii=False) + "\n")
    print(f"{len(tweets)} tweets, {len(annotations)} annotations -> {OUT_DIR}")


def fact_list():
    return [
        "La ballena azul es el animal más grande que ha existido en el planeta",
        "El corazón de la ballena azul pesa unos ciento ochenta kilos",
        "El cuerpo humano adulto tiene doscientos seis huesos",
        "La luz del sol tarda ocho minutos en llegar a la tierra",
        "El cerebro humano consume una quinta parte de la energía del cuerpo",
        "Los murciélagos son los únicos mamíferos que pueden volar",
        "La tortuga gigante puede vivir más de cien años",
        "El océano cubre la mayor parte de la superficie del planeta",
        "Un rayo es cinco veces más caliente que la superficie del sol",
        "Las abejas reconocen rostros humanos con entrenamiento",
        "El pulpo tiene tres corazones y sangre azul",
        "La miel no se vence si se guarda bien cerrada",
        "Los delfines duermen con la mitad del cerebro despierto",
        "El desierto más grande del mundo es de hielo",
        "La lengua de la jirafa mide unos cincuenta centímetros",
        "El colibrí es el único pájaro que vuela hacia atrás",
        "La temperatura promedio del planeta subió un grado en un siglo",
        "Las hormigas no duermen como los humanos",
        "El agua dulce es una parte pequeña del agua del planeta",
        "La montaña más alta del planeta crece unos milímetros cada año",
        "El caracol puede dormir tres años seguidos",
        "Los elefantes se reconocen en el espejo",
        "El corazón del ratón late seiscientas veces por minuto",
        "La estrella más cercana después del sol queda a cuatro años luz",
        "El bambú puede crecer casi un metro en un solo día",
        "Los gatos duermen dos tercios de su vida",
        "El ojo del avestruz es más grande que su cerebro",
        "La sangre recorre el cuerpo entero en un minuto",
        "Los tiburones existen desde antes que los árboles",
        "El sonido viaja cuatro veces más rápido en el agua",
        "Las huellas de la lengua son únicas como las de los dedos",
        "El planeta gira a gran velocidad y no lo sentimos",
        "Los pingüinos piden pareja con una piedra pequeña",
        "La piel es el órgano más grande del cuerpo humano",
        "El rayo busca siempre el camino más corto al suelo",
        "Las ballenas cantan melodías que cambian cada temporada",
        "El hueso más pequeño del cuerpo está en la oreja",
        "La luna se aleja de la tierra unos centímetros por año",
        "El café es la segunda bebida más consumida después del agua",
        "Los camellos guardan grasa y no agua en la joroba",
    ]


if __name__ == "__main__":
    main()
