package com.demo.service;

import com.demo.model.Author;
import com.demo.model.Book;
import com.demo.model.Genre;
import com.demo.repo.BookRepository;
import com.demo.util.Strings;
import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class CatalogService {
    private final BookRepository books;
    private final Map<String, Author> authors = new HashMap<>();

    public CatalogService(BookRepository books) {
        this.books = books;
    }

    public Author author(String name) {
        String key = Strings.normalize(name);
        Author a = authors.get(key);
        if (a == null) {
            a = new Author("A" + (authors.size() + 1), name);
            authors.put(key, a);
        }
        return a;
    }

    public Book add(String id, String title, String authorName, String genreCode, int copies) {
        if (Strings.isBlank(title)) {
            throw new IllegalArgumentException("title");
        }
        Book b = new Book.Builder()
                .id(id)
                .title(title.trim())
                .author(author(authorName))
                .genre(Genre.fromCode(genreCode))
                .copies(copies)
                .build();
        books.save(b);
        return b;
    }

    public List<Book> search(String prefix) {
        return books.byTitlePrefix(prefix);
    }

    public Map<Genre, Integer> histogram() {
        Map<Genre, Integer> out = new HashMap<>();
        for (Book b : books.findAll()) {
            out.merge(b.getGenre(), 1, Integer::sum);
        }
        return out;
    }
}
