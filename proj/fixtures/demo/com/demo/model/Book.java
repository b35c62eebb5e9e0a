package com.demo.model;

public class Book extends Entity {
    private final String title;
    private final Author author;
    private final Genre genre;
    private int copies;
    private int year;

    public Book(String id, String title, Author author, Genre genre, int copies) {
        super(id);
        this.title = title;
        this.author = author;
        this.genre = genre;
        this.copies = copies;
        author.addBook(this);
    }

    public String getTitle() {
        return title;
    }

    public Author getAuthor() {
        return author;
    }

    public Genre getGenre() {
        return genre;
    }

    public int getCopies() {
        return copies;
    }

    public int getYear() {
        return year;
    }

    public void setYear(int year) {
        this.year = year;
    }

    public boolean isAvailable() {
        return copies > 0;
    }

    public void checkOut() {
        if (copies <= 0) {
            throw new IllegalStateException("no copies left of " + title);
        }
        copies--;
        touch();
    }

    public void giveBack() {
        copies++;
        touch();
    }

    public static class Builder {
        private String id;
        private String title;
        private Author author;
        private Genre genre = Genre.FICTION;
        private int copies = 1;

        public Builder id(String id) {
            this.id = id;
            return this;
        }

        public Builder title(String title) {
            this.title = title;
            return this;
        }

        public Builder author(Author author) {
            this.author = author;
            return this;
        }

        public Builder genre(Genre genre) {
            this.genre = genre;
            return this;
        }

        public Builder copies(int copies) {
            this.copies = copies;
            return this;
        }

        public Book build() {
            if (title == null || author == null) {
                throw new IllegalStateException("title and author are required");
            }
            return new Book(id, title, author, genre, copies);
        }
    }
}
